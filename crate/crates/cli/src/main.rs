use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qaboa_core::harness::{self, csv_file_name, ExperimentConfig};
use qaboa_core::problems::{Problem, PROBLEM_IDS};

#[derive(Parser)]
#[command(
    name = "qaboa",
    version,
    about = "Two-mixer quantum approximate Bayesian optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every variant and repetition of an experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides `output_dir`).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Base seed (overrides `base_seed`).
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Brute-force optimum and selector checks for a bundled problem.
    Verify { problem: String },
    /// List the bundled problem ids.
    ListProblems,
    /// Recompute aggregate curves from a directory of trace files.
    Aggregate {
        trace_dir: PathBuf,
        /// Write one CSV per variant here instead of printing to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run {
            config,
            out,
            seed,
            jobs,
        } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if let Some(out) = out {
                cfg.output_dir = out;
            }
            if let Some(seed) = seed {
                cfg.base_seed = seed;
            }
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let result = harness::run_experiment(&cfg, jobs)
                .with_context(|| format!("running {}", config.display()))?;
            for curve in &result.curves {
                let last = curve.rows.last();
                let mean = last.and_then(|r| r.mean_best);
                let std = last.and_then(|r| r.std_best);
                match (mean, std) {
                    (Some(m), Some(s)) => {
                        println!(
                            "{:<10} final mean_best {m:.6} std {s:.6}",
                            curve.variant.label()
                        )
                    }
                    _ => println!("{:<10} no feasible sample", curve.variant.label()),
                }
            }
            println!("traces: {}", result.trace_dir.display());
            for path in &result.csv_paths {
                println!("aggregate: {}", path.display());
            }
        }
        Command::Verify { problem } => {
            print!("{}", harness::verify(&problem)?);
        }
        Command::ListProblems => {
            println!("{:<16} {:>6} {:>10}  sense", "id", "qubits", "continuous");
            for id in PROBLEM_IDS {
                let p = Problem::by_id(id)?;
                println!(
                    "{id:<16} {:>6} {:>10}  {}",
                    p.n_qubits(),
                    p.continuous_bounds().len(),
                    p.sense()
                );
            }
        }
        Command::Aggregate { trace_dir, out } => {
            let curves = harness::aggregate_dir(&trace_dir)?;
            anyhow::ensure!(!curves.is_empty(), "no traces in {}", trace_dir.display());
            match out {
                Some(dir) => {
                    std::fs::create_dir_all(&dir)
                        .with_context(|| format!("creating {}", dir.display()))?;
                    for curve in &curves {
                        let path = dir.join(csv_file_name(curve.variant));
                        std::fs::write(&path, curve.to_csv())
                            .with_context(|| format!("writing {}", path.display()))?;
                        println!("{}", path.display());
                    }
                }
                None => {
                    let mut text = String::new();
                    for (i, curve) in curves.iter().enumerate() {
                        let csv = curve.to_csv();
                        let body = if i == 0 {
                            csv.as_str()
                        } else {
                            csv.split_once('\n').map_or("", |(_, rest)| rest)
                        };
                        text.push_str(body);
                    }
                    emit(&text)?;
                }
            }
        }
    }
    Ok(())
}
