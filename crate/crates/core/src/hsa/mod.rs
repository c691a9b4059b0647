//! Harmony search over feasible timetables.
//!
//! The memory is filled by [`fill_memory`], then each iteration improvises
//! one new timetable and lets it replace the worst member if it is strictly
//! better. An improvisation whose repair fails is thrown away and retried
//! from a fresh stream; too many retries in one iteration abort the run.

mod improvise;
mod pitch;

pub use improvise::{improvise, memory_consideration, repair, RepairFailed};
pub use pitch::{apply_pitch, select_pitch_procedure, PitchProcedure};

use serde::Serialize;
use thiserror::Error;

use crate::construction::{fill_memory, ConstructionError};
use crate::cost::{evaluate, PenaltyBreakdown};
use crate::memory::{HarmonyMemory, Member};
use crate::params::HsaParams;
use crate::problem::Problem;
use crate::rng::{derive_seed, rng_from_seed};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HsaError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("iteration {iteration}: improvisation failed {restarts} times in a row")]
    RestartLimit { iteration: usize, restarts: usize },
}

/// Memory state after one iteration. Iteration 0 is the initial memory.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub iteration: usize,
    pub best_total: u64,
    pub worst_total: u64,
    pub restarts: usize,
}

/// A search in progress. Continuing a search with [`HarmonySearch::run_until`]
/// gives the same trajectory as running to the larger budget in one go.
#[derive(Debug, Clone)]
pub struct HarmonySearch<'a> {
    problem: &'a Problem,
    params: HsaParams,
    memory: HarmonyMemory,
    trace: Vec<TraceRecord>,
    initial: PenaltyBreakdown,
}

/// Outcome of one iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub candidate: PenaltyBreakdown,
    pub admitted: bool,
    pub restarts: usize,
}

impl<'a> HarmonySearch<'a> {
    pub fn new(problem: &'a Problem, params: HsaParams) -> Result<Self, HsaError> {
        params.validate().map_err(HsaError::Params)?;
        let memory = fill_memory(problem, &params)?;
        let initial = memory.best().cost;
        let trace = vec![TraceRecord {
            iteration: 0,
            best_total: initial.total,
            worst_total: memory.worst().cost.total,
            restarts: 0,
        }];
        Ok(HarmonySearch {
            problem,
            params,
            memory,
            trace,
            initial,
        })
    }

    pub fn iteration(&self) -> usize {
        self.trace.len() - 1
    }

    pub fn memory(&self) -> &HarmonyMemory {
        &self.memory
    }

    pub fn best(&self) -> &Member {
        self.memory.best()
    }

    /// Best penalty of the freshly filled memory.
    pub fn initial(&self) -> PenaltyBreakdown {
        self.initial
    }

    pub fn trace(&self) -> &[TraceRecord] {
        &self.trace
    }

    pub fn params(&self) -> &HsaParams {
        &self.params
    }

    /// Runs one improvise-and-update iteration.
    pub fn step(&mut self) -> Result<Step, HsaError> {
        let iteration = self.iteration() + 1;
        let mut restarts = 0;
        let timetable = loop {
            let seed = derive_seed(self.params.seed, &[0x15, iteration as u64, restarts as u64]);
            let mut rng = rng_from_seed(seed);
            match improvise(&self.memory, self.problem, &self.params, &mut rng) {
                Ok(tt) => break tt,
                Err(RepairFailed) => {
                    restarts += 1;
                    if restarts > self.params.restart_limit {
                        return Err(HsaError::RestartLimit {
                            iteration,
                            restarts,
                        });
                    }
                }
            }
        };
        let candidate = evaluate(&timetable, self.problem, &self.params.weights);
        let admitted = self.memory.update(Member {
            timetable,
            cost: candidate,
        });
        self.trace.push(TraceRecord {
            iteration,
            best_total: self.memory.best().cost.total,
            worst_total: self.memory.worst().cost.total,
            restarts,
        });
        Ok(Step {
            candidate,
            admitted,
            restarts,
        })
    }

    /// Iterates until `mi` improvisations have been made in total.
    pub fn run_until(&mut self, mi: usize) -> Result<(), HsaError> {
        while self.iteration() < mi {
            self.step()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RunResult {
    pub best: Member,
    pub initial: PenaltyBreakdown,
    pub trace: Vec<TraceRecord>,
    pub shortfall: usize,
}

/// Fills the memory and runs `params.mi` iterations.
pub fn run(problem: &Problem, params: &HsaParams) -> Result<RunResult, HsaError> {
    let mut search = HarmonySearch::new(problem, params.clone())?;
    search.run_until(params.mi)?;
    Ok(RunResult {
        best: search.best().clone(),
        initial: search.initial(),
        trace: search.trace().to_vec(),
        shortfall: search.memory().shortfall(),
    })
}
