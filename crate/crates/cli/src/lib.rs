//! Batch JSON front-end for translative functionals.
//!
//! A problem file names a set (`"set"`), a function whose epigraph is used
//! (`"function"`) or a control functional (`"control"`), a direction `"k"`,
//! query points and `"options"`. Each subcommand reads one problem and writes
//! one JSON document.

pub mod commands;
pub mod problem;
pub mod suites;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

pub use problem::Problem;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] translative::Error),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "translative", version, about = "Evaluate and check translative functionals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Problem file; standard input when absent.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,

    /// Result file; standard output when absent.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Overrides options.seed.
    #[arg(long, global = true, env = "TRANSLATIVE_SEED")]
    pub seed: Option<u64>,

    /// Overrides options.tol.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// φ at every query point.
    Eval,
    /// Whether each query lies in the effective domain.
    Domain,
    /// Run a check suite.
    Check {
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// Shift a polyhedral set by a level, a point, or a right-hand side.
    Shift,
    /// Compare the sublevel set at options.t with the shifted directional closure.
    Sublevel,
    /// φ over the query cloud with its argmin set.
    Scalarize {
        /// Comma-separated ε values; overrides options.epsilon_sweep.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        epsilon_sweep: Option<Vec<f64>>,
    },
}

/// Result document and exit code of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub json: String,
    pub code: i32,
}

fn render<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("results serialize");
    s.push('\n');
    s
}

/// Runs a subcommand on problem text already read from `--input`.
pub fn run(cli: &Cli, text: &str) -> Result<Outcome, CliError> {
    let mut problem = Problem::from_json(text)?;
    if let Some(tol) = cli.tol {
        if !(tol > 0.0) {
            return Err(translative::Error::NonPositiveTolerance(tol).into());
        }
        problem.options.tol = tol;
    }
    let ok = |json| Outcome { json, code: EXIT_OK };
    Ok(match &cli.command {
        Command::Eval => ok(render(&commands::eval(&problem)?)),
        Command::Domain => ok(render(&commands::domain(&problem)?)),
        Command::Shift => ok(render(&commands::shift(&problem)?)),
        Command::Sublevel => ok(render(&commands::sublevel(&problem)?)),
        Command::Check { suite } => {
            let out = suites::check(&problem, suite, problem.seed(cli.seed))?;
            let code = if out.pass { EXIT_OK } else { EXIT_CHECK_FAILED };
            Outcome {
                json: render(&out),
                code,
            }
        }
        Command::Scalarize { epsilon_sweep } => {
            let sweep = epsilon_sweep
                .clone()
                .unwrap_or_else(|| problem.options.epsilon_sweep.clone());
            let out = commands::scalarize(&problem, &sweep)?;
            let code = if out.consistent() { EXIT_OK } else { EXIT_CHECK_FAILED };
            Outcome {
                json: render(&out),
                code,
            }
        }
    })
}

/// `{"error": {...}}` for failures before a result exists.
pub fn error_json(err: &CliError) -> String {
    let kind = match err {
        CliError::Parse(_) => "parse",
        CliError::Core(_) => "core",
        CliError::UnknownSuite(_) => "unknown_suite",
        CliError::NotApplicable(_) => "not_applicable",
        CliError::Io(_) => "io",
    };
    render(&serde_json::json!({ "error": { "kind": kind, "message": err.to_string() } }))
}
