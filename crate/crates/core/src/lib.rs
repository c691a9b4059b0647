//! Harmony search for curriculum-based course timetabling.
//!
//! The pipeline: [`instance::parse_instance`] reads an ITC-2007 `.ctt` file,
//! [`problem::Problem`] precomputes the lookup matrices, [`construction`]
//! builds the initial feasible memory and [`hsa`] improves it. Timetables are
//! checked with [`timetable::validate_hard`] and scored by [`cost`].

pub mod construction;
pub mod cost;
pub mod exec;
pub mod generate;
pub mod harness;
pub mod hsa;
pub mod instance;
pub mod matrices;
pub mod memory;
pub mod params;
pub mod problem;
pub mod report;
pub mod rng;
pub mod solution;
pub mod timetable;

pub use cost::{PenaltyBreakdown, SoftWeights};
pub use exec::Exec;
pub use hsa::{run, HarmonySearch, HsaError, RunResult, TraceRecord};
pub use instance::{parse_instance, Instance};
pub use params::HsaParams;
pub use problem::Problem;
pub use timetable::{validate_hard, Timetable};
