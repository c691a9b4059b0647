use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ctt_hsa::generate::{generate, itc2007_shape};
use ctt_hsa::harness::{
    cmd_benchmark, cmd_solve, cmd_validate, render_table, ReportFormat, RunConfig,
};
use ctt_hsa::{Exec, HsaParams, SoftWeights};

#[derive(Parser)]
#[command(
    name = "ctt-hsa",
    version,
    about = "Harmony search for curriculum-based course timetabling"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve instances and write solutions, traces and cost breakdowns.
    Solve {
        /// `.ctt` files or directories containing them.
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
        /// Improvisations per run.
        #[arg(long, default_value_t = 50)]
        mi: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Check a solution file: hard violations and soft penalty breakdown.
    Validate {
        instance: PathBuf,
        solution: PathBuf,
        /// Soft weights: capacity, stability, min days, compactness.
        #[arg(long, default_value = "1,1,5,2", value_parser = parse_weights)]
        weights: SoftWeights,
    },
    /// Run each instance repeatedly and report the initial penalty and the
    /// best penalty after the two iteration budgets.
    Benchmark {
        #[arg(required = true)]
        instances: Vec<PathBuf>,
        #[command(flatten)]
        search: SearchArgs,
        /// First iteration budget.
        #[arg(long, default_value_t = 10)]
        phase1: usize,
        /// Second iteration budget, continuing the same run.
        #[arg(long, default_value_t = 50)]
        phase2: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Write a random instance with the dimensions of a competition instance.
    Generate {
        /// Shape to copy, `comp01` to `comp21`.
        shape: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    /// Harmony memory size.
    #[arg(long, default_value_t = 50)]
    hms: usize,
    /// Harmony memory consideration rate.
    #[arg(long, default_value_t = 0.9)]
    hmcr: f64,
    /// Pitch adjustment rate.
    #[arg(long, default_value_t = 1.0)]
    par: f64,
    /// Base seed; repetition r uses seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Repetitions per instance.
    #[arg(long, default_value_t = 1)]
    reps: usize,
    /// Soft weights: capacity, stability, min days, compactness.
    #[arg(long, default_value = "1,1,5,2", value_parser = parse_weights)]
    weights: SoftWeights,
    /// Repair step budget per improvisation (default 10 x lectures).
    #[arg(long)]
    repair_cap: Option<usize>,
    /// Failed improvisations allowed per iteration before giving up.
    #[arg(long, default_value_t = 50)]
    restart_limit: usize,
    /// Run on one thread.
    #[arg(long)]
    sequential: bool,
}

impl SearchArgs {
    fn params(&self, mi: usize) -> HsaParams {
        HsaParams {
            hms: self.hms,
            hmcr: self.hmcr,
            par: self.par,
            mi,
            repair_cap: self.repair_cap,
            restart_limit: self.restart_limit,
            seed: self.seed,
            weights: self.weights,
            exec: if self.sequential {
                Exec::Sequential
            } else {
                Exec::default()
            },
            ..HsaParams::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Table,
}

fn parse_weights(s: &str) -> Result<SoftWeights, String> {
    let parts: Vec<u64> = s
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|e| format!("`{x}`: {e}")))
        .collect::<Result<_, _>>()?;
    let [capacity, stability, min_days, compactness] = parts[..] else {
        return Err("expected four comma-separated weights".into());
    };
    Ok(SoftWeights {
        capacity,
        stability,
        min_days,
        compactness,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            instances,
            search,
            mi,
            out,
        } => {
            let cfg = RunConfig {
                repetitions: search.reps,
                params: search.params(mi),
                ..RunConfig::new(instances, out)
            };
            match cmd_solve(&cfg) {
                Ok(outcomes) => {
                    for o in outcomes {
                        println!(
                            "{} seed {}: total {} -> {}",
                            o.instance,
                            o.seed,
                            o.cost.total,
                            o.solution_path.display()
                        );
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e.to_string(), e.exit_code()),
            }
        }
        Command::Validate {
            instance,
            solution,
            weights,
        } => match cmd_validate(&instance, &solution, &weights) {
            Ok((problem, report)) => {
                print!("{}", report.render(&problem));
                if report.feasible() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(1)
                }
            }
            Err(e) => fail(&e.to_string(), e.exit_code()),
        },
        Command::Benchmark {
            instances,
            search,
            phase1,
            phase2,
            out,
            format,
        } => {
            if phase1 > phase2 {
                return fail("--phase1 must not exceed --phase2", 2);
            }
            let cfg = RunConfig {
                repetitions: search.reps,
                params: search.params(phase2),
                format: match format {
                    Format::Csv => ReportFormat::Csv,
                    Format::Table => ReportFormat::Table,
                },
                ..RunConfig::new(instances, &out)
            };
            match cmd_benchmark(&cfg, (phase1, phase2)) {
                Ok(rows) => {
                    match cfg.format {
                        ReportFormat::Table => print!("{}", render_table(&rows)),
                        ReportFormat::Csv => {
                            let mut stdout = std::io::stdout().lock();
                            if let Err(e) = ctt_hsa::report::write_rows(&mut stdout, &rows) {
                                return fail(&e.to_string(), 4);
                            }
                        }
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => fail(&e.to_string(), e.exit_code()),
            }
        }
        Command::Generate { shape, seed, out } => {
            let Some(shape) = itc2007_shape(&shape) else {
                return fail(&format!("unknown shape `{shape}`"), 2);
            };
            let text = generate(&shape, seed).to_ctt();
            match out {
                Some(path) => match fs::write(&path, text) {
                    Ok(()) => ExitCode::SUCCESS,
                    Err(e) => fail(&format!("cannot write {}: {e}", path.display()), 4),
                },
                None => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
            }
        }
    }
}

fn fail(msg: &str, code: i32) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(code as u8)
}
