//! CSV output: per-iteration traces, penalty breakdowns and benchmark rows.

use std::io;

use serde::Serialize;

use crate::cost::PenaltyBreakdown;
use crate::hsa::TraceRecord;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CostRow {
    pub instance: String,
    pub seed: u64,
    pub iteration: usize,
    pub room_capacity: u64,
    pub room_stability: u64,
    pub min_working_days: u64,
    pub curriculum_compactness: u64,
    pub total: u64,
}

impl CostRow {
    pub fn new(instance: &str, seed: u64, iteration: usize, b: &PenaltyBreakdown) -> Self {
        CostRow {
            instance: instance.to_string(),
            seed,
            iteration,
            room_capacity: b.room_capacity,
            room_stability: b.room_stability,
            min_working_days: b.min_working_days,
            curriculum_compactness: b.curriculum_compactness,
            total: b.total,
        }
    }
}

/// One benchmark run: initial memory, and best penalty after the two
/// improvisation budgets. Failed runs carry the error and no penalties.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchmarkRow {
    pub instance: String,
    pub repetition: usize,
    pub seed: u64,
    pub initial_penalty: Option<u64>,
    pub hsa_10_penalty: Option<u64>,
    pub hsa_50_penalty: Option<u64>,
    pub time_s: f64,
    pub error: String,
}

pub fn write_rows<W: io::Write, T: Serialize>(out: W, rows: &[T]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn trace_csv(trace: &[TraceRecord]) -> String {
    let mut buf = Vec::new();
    write_rows(&mut buf, trace).expect("writing to memory");
    String::from_utf8(buf).expect("csv output is utf-8")
}
