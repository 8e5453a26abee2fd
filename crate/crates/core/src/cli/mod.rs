//! Command layer behind the `edgecascade` binary.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 numeric
//! precision failure, 64 usage error.

mod commands;
mod manifest;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{parse_case_alias, parse_n_list, parse_y_grid};
pub use manifest::RunManifest;
pub use output::Outcome;

use crate::numerics::{NumericError, PrecisionContext};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_PRECISION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Scope {
    Identities,
    Relations,
    Catalog,
    Finite,
    Decomposition,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "edgecascade", version, about = "Edge-density expansions of Gaussian and Laguerre random matrix ensembles")]
pub struct Cli {
    /// Working precision in decimal digits (default: EDGECASCADE_PRECISION or 40).
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Directory for the result file and its manifest.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the exact identity suites.
    Verify {
        #[arg(value_enum, default_value = "all")]
        scope: Scope,
        /// Check the tables with the recorded errata applied.
        #[arg(long)]
        corrected: bool,
        /// JSON operator file ({"case": .., "operators": [..]}) compared against the catalog.
        #[arg(long)]
        operators: Option<PathBuf>,
    },
    /// Re-derive r_j by solving the cascade inside an ansatz.
    Solve {
        case: String,
        j: usize,
        /// Degree bounds per basis function, comma separated.
        #[arg(long)]
        bounds: Option<String>,
    },
    /// Laplace transform of r_j and the recursion step at order j.
    Laplace {
        case: String,
        j: usize,
        /// Constant in the β = 1, 4 transforms (1 for β = 1, 0 for β = 4).
        #[arg(long)]
        nu: Option<String>,
    },
    /// Saddle-point expansion of the GUE transform to order K in N^(-1/3).
    Saddle { order: usize },
    /// Operator expansion of 1F1(-N + shift; a+1; x/N) to order K in 1/N.
    Hyper {
        shift: u8,
        order: u32,
        /// Laguerre parameter for the numeric check.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        a: String,
    },
    /// Convergence study against finite-N densities.
    Converge {
        case: String,
        j: usize,
        /// Comma separated N values, e.g. "50,100,200".
        ns: String,
        /// "lo:hi:step" or a comma separated list.
        #[arg(allow_hyphen_values = true)]
        ys: String,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long)]
        gamma: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Precision(String),
    #[error("{0}")]
    Failed(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Precision(_) => EXIT_PRECISION,
            CliError::Failed(_) | CliError::Io(_) => EXIT_FAIL,
        }
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::PrecisionShortfall { .. } | NumericError::Unconverged { .. } => {
                CliError::Precision(format!("{e}; retry with a larger --precision or {}", crate::numerics::PRECISION_ENV))
            }
            NumericError::BadPrecision(_) | NumericError::Domain(_) | NumericError::Unsupported(_) => CliError::Usage(e.to_string()),
        }
    }
}

fn context(cli: &Cli, fallback: Option<PrecisionContext>) -> Result<PrecisionContext, CliError> {
    match cli.precision {
        Some(d) => Ok(PrecisionContext::new(d)?),
        None if std::env::var_os(crate::numerics::PRECISION_ENV).is_some() => Ok(PrecisionContext::from_env()?),
        None => Ok(fallback.map(Ok).unwrap_or_else(PrecisionContext::from_env)?),
    }
}

/// Parses `args`, runs the command, writes output, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((outcome, code)) => match emit(&cli, &outcome) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                e.exit_code()
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Runs the command without writing anything; returns the outcome and the
/// exit code it implies.
pub fn execute(cli: &Cli) -> Result<(Outcome, i32), CliError> {
    let started = std::time::Instant::now();
    let mut outcome = match &cli.command {
        Command::Verify { scope, corrected, operators } => commands::verify(*scope, *corrected, operators.as_deref())?,
        Command::Solve { case, j, bounds } => commands::solve(case, *j, bounds.as_deref())?,
        Command::Laplace { case, j, nu } => commands::laplace(case, *j, nu.as_deref())?,
        Command::Saddle { order } => commands::saddle(*order)?,
        Command::Hyper { shift, order, a } => commands::hyper(*shift, *order, a, &context(cli, None)?)?,
        Command::Converge { case, j, ns, ys, a, gamma } => {
            let n_list = parse_n_list(ns)?;
            let max_n = n_list.iter().copied().max().unwrap_or(0);
            let ctx = context(cli, Some(PrecisionContext::for_size(max_n)))?;
            commands::converge(case, *j, n_list, parse_y_grid(ys)?, a.as_deref(), gamma.as_deref(), &ctx)?
        }
    };
    outcome.manifest.elapsed_ms = started.elapsed().as_millis() as u64;
    let code = if outcome.passed { EXIT_OK } else { EXIT_FAIL };
    Ok((outcome, code))
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    let body = outcome.render(cli.format)?;
    match &cli.out {
        None => print!("{body}"),
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let ext = match cli.format {
                Format::Json => "json",
                Format::Csv => "csv",
                Format::Text => "txt",
            };
            let file = dir.join(format!("{}.{ext}", outcome.name));
            std::fs::write(&file, &body)?;
            let mut manifest = outcome.manifest.clone();
            manifest.add_output(&file.file_name().unwrap_or_default().to_string_lossy(), body.as_bytes());
            std::fs::write(dir.join(format!("{}.manifest.json", outcome.name)), manifest.to_json())?;
            println!("wrote {}", file.display());
        }
    }
    Ok(())
}
