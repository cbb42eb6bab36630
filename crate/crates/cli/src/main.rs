//! `schur`: batch checks of the Schur determinant inequality and its exact
//! equality conditions for generalized matrix functions, plus the
//! symmetric-tensor oracle and compatible-permutation enumerations.
//!
//! Exit codes: 0 success, 1 internal assertion failure, 2 precondition or
//! usage error, 3 parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod problem;

use commands::{CompatArgs, OutputMode};

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input file (exit 3).
    Parse(String),
    /// Bad combination of arguments or inconsistent problem data (exit 2).
    Usage(String),
    /// Error raised by the library (exit 1 for internal assertions, 2
    /// otherwise).
    Core(schur_core::Error),
}

impl From<schur_core::Error> for CliError {
    fn from(e: schur_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(msg) | CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 3,
            CliError::Usage(_) => 2,
            CliError::Core(e) => {
                if e.is_internal() {
                    1
                } else {
                    2
                }
            }
        }
    }
}

#[derive(Parser)]
#[command(
    name = "schur",
    about = "Schur generalized matrix function checks for permutation-group representations",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON instead of the human-readable report.
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    /// Human-readable report (the default).
    #[arg(long, global = true)]
    pretty: bool,

    /// Relative threshold below which matrix entries count as zero.
    #[arg(long, global = true, value_name = "TOL")]
    tol_zero: Option<f64>,

    /// Relative tolerance for equality verdicts.
    #[arg(long, global = true, value_name = "TOL")]
    tol_eq: Option<f64>,

    /// Seed for the randomized oracle fixtures.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Unit-normalize the probe vector u instead of rejecting non-unit
    /// input.
    #[arg(long, global = true)]
    normalize_u: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Schur inequality check with equality diagnosis.
    Check { file: PathBuf },
    /// Tensor-oracle residuals and the six-way equality chain (n ≤ 6;
    /// the SCHUR_TENSOR_MAX_N environment variable raises the cap).
    Oracle { file: PathBuf },
    /// Compatible permutations of a multi-index or spike function.
    Compat {
        /// Degree (n ≤ 8).
        #[arg(long)]
        n: usize,
        /// Multi-index as comma-separated 1-based values, e.g. "2,1,3".
        #[arg(long)]
        alpha: Option<String>,
        /// Spike function as "r,c" with r < c.
        #[arg(long)]
        spike: Option<String>,
        /// Optional JSON matrix file for the restricted set.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
    /// Trace form m·det(H) vs Tr(M_H).
    Trace { file: PathBuf },
    /// Upper-triangular factor of H and its support group.
    Factor { file: PathBuf },
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mode = OutputMode { json: cli.json };
    match cli.command {
        Command::Check { file } => {
            let problem =
                commands::load_problem(&file, cli.tol_zero, cli.tol_eq, cli.normalize_u)?;
            commands::cmd_check(&file, problem, &mode)
        }
        Command::Oracle { file } => {
            let problem =
                commands::load_problem(&file, cli.tol_zero, cli.tol_eq, cli.normalize_u)?;
            commands::cmd_oracle(&file, problem, cli.seed, &mode)
        }
        Command::Compat {
            n,
            alpha,
            spike,
            matrix,
        } => commands::cmd_compat(
            CompatArgs {
                n,
                alpha,
                spike,
                matrix,
                tol_zero: cli.tol_zero,
            },
            &mode,
        ),
        Command::Trace { file } => {
            let problem =
                commands::load_problem(&file, cli.tol_zero, cli.tol_eq, cli.normalize_u)?;
            commands::cmd_trace(&file, problem, &mode)
        }
        Command::Factor { file } => {
            let problem =
                commands::load_problem(&file, cli.tol_zero, cli.tol_eq, cli.normalize_u)?;
            commands::cmd_factor(&file, problem, &mode)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
