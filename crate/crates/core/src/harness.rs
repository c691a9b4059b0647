//! Solve, validate and benchmark drivers behind the command-line tool.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::cost::{total_cost, PenaltyBreakdown, SoftWeights};
use crate::exec::Exec;
use crate::hsa::{HarmonySearch, HsaError};
use crate::instance::{parse_instance, ParseError};
use crate::params::HsaParams;
use crate::problem::Problem;
use crate::report::{trace_csv, write_rows, BenchmarkRow, CostRow};
use crate::solution::{parse_solution, to_timetable, write_solution, SolutionError};
use crate::timetable::{validate_assignments, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Csv,
    Table,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub instances: Vec<PathBuf>,
    pub params: HsaParams,
    pub repetitions: usize,
    pub out_dir: PathBuf,
    pub format: ReportFormat,
}

impl RunConfig {
    pub fn new(instances: Vec<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            instances,
            params: HsaParams::default(),
            repetitions: 1,
            out_dir: out_dir.into(),
            format: ReportFormat::Csv,
        }
    }

    fn check(&self) -> Result<(), HarnessError> {
        if self.instances.is_empty() {
            return Err(HarnessError::Config("no instance given".into()));
        }
        if self.repetitions == 0 {
            return Err(HarnessError::Config(
                "repetitions must be at least 1".into(),
            ));
        }
        self.params.validate().map_err(HarnessError::Config)
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{0}")]
    Config(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Solution {
        path: PathBuf,
        source: SolutionError,
    },
    #[error("{instance}: {source}")]
    Search { instance: String, source: HsaError },
    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },
}

impl HarnessError {
    /// Process exit status: 2 for unreadable or malformed input, 3 when no
    /// feasible timetable could be produced, 4 for output failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_)
            | HarnessError::Read { .. }
            | HarnessError::Parse { .. }
            | HarnessError::Solution { .. } => 2,
            HarnessError::Search { .. } => 3,
            HarnessError::Write { .. } => 4,
        }
    }
}

/// Expands directories into their `.ctt` files, sorted by name.
pub fn collect_instances(paths: &[PathBuf]) -> Result<Vec<PathBuf>, HarnessError> {
    let mut out = Vec::new();
    for path in paths {
        if path.is_dir() {
            let entries = fs::read_dir(path).map_err(|source| HarnessError::Read {
                path: path.clone(),
                source,
            })?;
            let mut found: Vec<PathBuf> = entries
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "ctt"))
                .collect();
            found.sort();
            out.extend(found);
        } else {
            out.push(path.clone());
        }
    }
    Ok(out)
}

pub fn load_problem(path: &Path) -> Result<Problem, HarnessError> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Read {
        path: path.into(),
        source,
    })?;
    let instance = parse_instance(&text).map_err(|source| HarnessError::Parse {
        path: path.into(),
        source,
    })?;
    Ok(Problem::new(instance))
}

/// File stem used to name outputs (`comp01.ctt` gives `comp01`).
pub fn instance_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into())
}

fn write_file(path: PathBuf, contents: &[u8]) -> Result<PathBuf, HarnessError> {
    fs::write(&path, contents).map_err(|source| HarnessError::Write {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub instance: String,
    pub seed: u64,
    pub cost: PenaltyBreakdown,
    pub solution_path: PathBuf,
    pub trace_path: PathBuf,
    pub cost_path: PathBuf,
}

/// Solves every (instance, repetition) pair. Repetition `r` runs with seed
/// `params.seed + r`. Writes `<label>_s<seed>.sol`, `.trace.csv` and
/// `.cost.csv` into the output directory.
pub fn cmd_solve(cfg: &RunConfig) -> Result<Vec<SolveOutcome>, HarnessError> {
    cfg.check()?;
    let instances = collect_instances(&cfg.instances)?;
    let problems = instances
        .iter()
        .map(|p| load_problem(p))
        .collect::<Result<Vec<_>, _>>()?;
    fs::create_dir_all(&cfg.out_dir).map_err(|source| HarnessError::Write {
        path: cfg.out_dir.clone(),
        source,
    })?;
    let mut outcomes = Vec::new();
    for (path, problem) in instances.iter().zip(&problems) {
        let label = instance_label(path);
        for rep in 0..cfg.repetitions {
            let seed = cfg.params.seed.wrapping_add(rep as u64);
            let params = HsaParams {
                seed,
                ..cfg.params.clone()
            };
            let mut search = HarmonySearch::new(problem, params.clone()).map_err(|source| {
                HarnessError::Search {
                    instance: label.clone(),
                    source,
                }
            })?;
            search
                .run_until(params.mi)
                .map_err(|source| HarnessError::Search {
                    instance: label.clone(),
                    source,
                })?;
            let best = search.best();
            let stem = cfg.out_dir.join(format!("{label}_s{seed}"));
            let solution_path = write_file(
                stem.with_extension("sol"),
                write_solution(&best.timetable, problem).as_bytes(),
            )?;
            let trace_path = write_file(
                stem.with_extension("trace.csv"),
                trace_csv(search.trace()).as_bytes(),
            )?;
            let mut cost_csv = Vec::new();
            write_rows(
                &mut cost_csv,
                &[CostRow::new(&label, seed, search.iteration(), &best.cost)],
            )
            .expect("writing to memory");
            let cost_path = write_file(stem.with_extension("cost.csv"), &cost_csv)?;
            outcomes.push(SolveOutcome {
                instance: label.clone(),
                seed,
                cost: best.cost,
                solution_path,
                trace_path,
                cost_path,
            });
        }
    }
    Ok(outcomes)
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Soft cost; only defined for feasible solutions.
    pub cost: Option<PenaltyBreakdown>,
    pub lectures: usize,
}

impl ValidationReport {
    pub fn feasible(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render(&self, problem: &Problem) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "lectures: {}", self.lectures);
        let _ = writeln!(out, "hard violations: {}", self.violations.len());
        for v in &self.violations {
            let _ = writeln!(out, "  {}", v.describe(problem));
        }
        match &self.cost {
            Some(c) => {
                let _ = writeln!(out, "room capacity: {}", c.room_capacity);
                let _ = writeln!(out, "room stability: {}", c.room_stability);
                let _ = writeln!(out, "min working days: {}", c.min_working_days);
                let _ = writeln!(out, "curriculum compactness: {}", c.curriculum_compactness);
                let _ = writeln!(out, "total: {}", c.total);
            }
            None => out.push_str("infeasible: soft cost not evaluated\n"),
        }
        out
    }
}

pub fn validate_text(
    problem: &Problem,
    solution: &str,
    weights: &SoftWeights,
) -> Result<ValidationReport, SolutionError> {
    let assignments = parse_solution(solution, problem)?;
    let violations = validate_assignments(problem, &assignments);
    let cost = if violations.is_empty() {
        let tt = to_timetable(problem, &assignments).expect("validated placements rebuild");
        Some(total_cost(&tt, problem, weights).expect("validated timetable has a cost"))
    } else {
        None
    };
    Ok(ValidationReport {
        violations,
        cost,
        lectures: assignments.len(),
    })
}

pub fn cmd_validate(
    instance: &Path,
    solution: &Path,
    weights: &SoftWeights,
) -> Result<(Problem, ValidationReport), HarnessError> {
    let problem = load_problem(instance)?;
    let text = fs::read_to_string(solution).map_err(|source| HarnessError::Read {
        path: solution.into(),
        source,
    })?;
    let report =
        validate_text(&problem, &text, weights).map_err(|source| HarnessError::Solution {
            path: solution.into(),
            source,
        })?;
    Ok((problem, report))
}

fn benchmark_one(
    problem: &Problem,
    label: &str,
    rep: usize,
    params: HsaParams,
    phases: (usize, usize),
) -> BenchmarkRow {
    let start = Instant::now();
    let seed = params.seed;
    let mut row = BenchmarkRow {
        instance: label.to_string(),
        repetition: rep,
        seed,
        initial_penalty: None,
        hsa_10_penalty: None,
        hsa_50_penalty: None,
        time_s: 0.0,
        error: String::new(),
    };
    let result = (|| -> Result<(), HsaError> {
        let mut search = HarmonySearch::new(problem, params)?;
        row.initial_penalty = Some(search.initial().total);
        search.run_until(phases.0)?;
        row.hsa_10_penalty = Some(search.best().cost.total);
        search.run_until(phases.1)?;
        row.hsa_50_penalty = Some(search.best().cost.total);
        Ok(())
    })();
    if let Err(e) = result {
        row.error = e.to_string();
    }
    row.time_s = (start.elapsed().as_secs_f64() * 1000.0).round() / 1000.0;
    row
}

/// Runs every (instance, repetition) pair, recording the initial best and
/// the best after `phases.0` and `phases.1` improvisations. Pairs run in
/// parallel under `Exec::Parallel`; rows come back in input order. Failures
/// are recorded in their row and do not stop the benchmark.
pub fn cmd_benchmark(
    cfg: &RunConfig,
    phases: (usize, usize),
) -> Result<Vec<BenchmarkRow>, HarnessError> {
    cfg.check()?;
    let instances = collect_instances(&cfg.instances)?;
    let loaded: Vec<(String, Result<Problem, HarnessError>)> = instances
        .iter()
        .map(|p| (instance_label(p), load_problem(p)))
        .collect();
    let jobs: Vec<(usize, usize)> = (0..loaded.len())
        .flat_map(|i| (0..cfg.repetitions).map(move |r| (i, r)))
        .collect();
    // Runs already fan out internally when filling memory; keep the inner
    // level sequential so parallel jobs do not oversubscribe.
    let inner = if cfg.params.exec == Exec::Parallel {
        Exec::Sequential
    } else {
        cfg.params.exec
    };
    let rows = cfg.params.exec.map(jobs.len(), |j| {
        let (i, rep) = jobs[j];
        let (label, problem) = &loaded[i];
        let seed = cfg.params.seed.wrapping_add(rep as u64);
        match problem {
            Ok(problem) => {
                let params = HsaParams {
                    seed,
                    exec: inner,
                    ..cfg.params.clone()
                };
                benchmark_one(problem, label, rep, params, phases)
            }
            Err(e) => BenchmarkRow {
                instance: label.clone(),
                repetition: rep,
                seed,
                initial_penalty: None,
                hsa_10_penalty: None,
                hsa_50_penalty: None,
                time_s: 0.0,
                error: e.to_string(),
            },
        }
    });
    fs::create_dir_all(&cfg.out_dir).map_err(|source| HarnessError::Write {
        path: cfg.out_dir.clone(),
        source,
    })?;
    let mut csv = Vec::new();
    write_rows(&mut csv, &rows).expect("writing to memory");
    write_file(cfg.out_dir.join("benchmark.csv"), &csv)?;
    Ok(rows)
}

/// Plain-text table of benchmark rows.
pub fn render_table(rows: &[BenchmarkRow]) -> String {
    let cell = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
    let mut out = format!(
        "{:<16} {:>4} {:>12} {:>8} {:>8} {:>8} {:>9}  {}\n",
        "instance", "rep", "seed", "initial", "hsa@10", "hsa@50", "time_s", "error"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<16} {:>4} {:>12} {:>8} {:>8} {:>8} {:>9.3}  {}",
            r.instance,
            r.repetition,
            r.seed,
            cell(r.initial_penalty),
            cell(r.hsa_10_penalty),
            cell(r.hsa_50_penalty),
            r.time_s,
            r.error
        );
    }
    out
}
