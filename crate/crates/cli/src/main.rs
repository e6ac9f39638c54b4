//! `edgedom`: minimum maximal matchings from the command line.
//!
//! Exit codes: 0 ok, 2 precondition or bad parameters, 3 budget exhausted,
//! 4 unreadable or malformed input.

mod commands;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use edgedom::approx::ApproxClass;
use edgedom::bounds::{RationalBound, UpperKind};
use edgedom::generators::GenSpec;
use edgedom::structure::classify;
use serde_json::json;
use sha2::{Digest, Sha256};

use commands::{CliError, Outcome, Payload, EXIT_PRECONDITION};

#[derive(Parser)]
#[command(name = "edgedom", version, about = "Minimum maximal matchings (edge domination)")]
struct Cli {
    /// Seed for random families; EDGEDOM_SEED overrides it.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Wrap JSON output in a run report (command, input digest, class
    /// report, wall time, seed).
    #[arg(long, global = true)]
    report: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph file.
    Gen {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 0)]
        a: usize,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        delta: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report class membership (bipartite, regular, claw-free, T*-free, ...).
    Check { file: PathBuf },
    /// Construct a maximal matching within an upper bound.
    Bound {
        file: PathBuf,
        #[arg(long, value_enum)]
        theorem: Theorem,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long)]
        no_verify: bool,
        /// Node budget of the exact solver used by `conj`.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
        /// Also write the matching in `m u v` format.
        #[arg(long)]
        matching_out: Option<PathBuf>,
    },
    /// Exact edge domination number.
    Solve {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Approximate with a certified ratio.
    Approx {
        file: PathBuf,
        #[arg(long)]
        class: ApproxClass,
        /// Rational `p/q`.
        #[arg(long)]
        eps: RationalBound,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Check a matching file: validity, maximality and an optional bound.
    Verify {
        file: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long)]
        bound: Option<RationalBound>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Theorem {
    T1,
    T2,
    T3,
    T4,
    Conj,
}

impl From<Theorem> for UpperKind {
    fn from(t: Theorem) -> Self {
        match t {
            Theorem::T1 => UpperKind::T1,
            Theorem::T2 => UpperKind::T2,
            Theorem::T3 => UpperKind::T3,
            Theorem::T4 => UpperKind::T4,
            Theorem::Conj => UpperKind::Conj,
        }
    }
}

fn seed(cli_seed: u64) -> Result<u64, CliError> {
    match std::env::var("EDGEDOM_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::new(EXIT_PRECONDITION, "parameters", format!("bad EDGEDOM_SEED {s:?}"))),
        Err(_) => Ok(cli_seed),
    }
}

/// Runs the command; returns the outcome and, for file inputs, the raw text.
fn run(cli: &Cli, seed: u64) -> Result<(Outcome, Option<String>), CliError> {
    let load = |p: &Path| -> Result<(edgedom::Graph, String), CliError> {
        let text = commands::read_input(p)?;
        Ok((commands::parse_graph(&text)?, text))
    };
    Ok(match &cli.command {
        Command::Gen { family, a, b, delta, t, n, out } => {
            let family = commands::family_from_name(family)
                .ok_or_else(|| CliError::new(EXIT_PRECONDITION, "parameters", format!("unknown family {family:?}")))?;
            let spec = GenSpec { family, a: *a, b: *b, delta: *delta, t: *t, n: *n, seed };
            (commands::gen(&spec, out.as_deref())?, None)
        }
        Command::Check { file } => {
            let (g, text) = load(file)?;
            (commands::check(&g)?, Some(text))
        }
        Command::Bound { file, theorem, delta, no_verify, budget, matching_out } => {
            let (g, text) = load(file)?;
            let out = commands::bound(&g, (*theorem).into(), *delta, !no_verify, *budget, matching_out.as_deref())?;
            (out, Some(text))
        }
        Command::Solve { file, budget } => {
            let (g, text) = load(file)?;
            (commands::solve(&g, *budget)?, Some(text))
        }
        Command::Approx { file, class, eps, budget } => {
            let (g, text) = load(file)?;
            (commands::approx(&g, *class, *eps, *budget)?, Some(text))
        }
        Command::Verify { file, matching, bound } => {
            let (g, text) = load(file)?;
            let mtext = commands::read_input(matching)?;
            (commands::verify(&g, &mtext, *bound)?, Some(text))
        }
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let result = seed(cli.seed).and_then(|s| run(&cli, s).map(|r| (r, s)));
    match result {
        Ok(((outcome, input), seed)) => {
            match outcome.payload {
                Payload::Text(text) => emit(&text),
                Payload::Json(value) => {
                    let value = if cli.report {
                        let class_report = input
                            .as_deref()
                            .and_then(|t| edgedom::Graph::parse(t).ok())
                            .map(|g| serde_json::to_value(classify(&g)).expect("serializable"));
                        json!({
                            "command": std::env::args().skip(1).collect::<Vec<_>>(),
                            "input_digest": input.map(|t| hex::encode(Sha256::digest(t.as_bytes()))),
                            "class_report": class_report,
                            "result": value,
                            "wall_time_ms": started.elapsed().as_secs_f64() * 1000.0,
                            "seed": seed,
                        })
                    } else {
                        value
                    };
                    emit(&format!("{}\n", serde_json::to_string_pretty(&value).expect("serializable")));
                }
            }
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            eprintln!("{}", serde_json::to_string(&e).expect("serializable"));
            ExitCode::from(e.code as u8)
        }
    }
}
