//! `staircase`: coefficient tables, verification runs and staircase totals.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::CliError;

#[derive(Debug, Parser)]
#[command(name = "staircase", version, about = "Staircase patterns in integer compositions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coefficient table n(a, b, s) for 1 <= a <= max-n.
    Table(TableArgs),
    /// Cross-check every closed form against the oracle and the other routes.
    Verify(VerifyArgs),
    /// Total staircases over compositions of n with a given number of parts.
    Corollary(CorollaryArgs),
    /// Brute-force histogram for one n, or the staircase count of one composition.
    Oracle(OracleArgs),
    /// Dump a series as JSON.
    SeriesDump(DumpArgs),
    /// List the registered generating-function strategies and determinant algorithms.
    Methods,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    /// Aligned columns for reading; not a stable machine format.
    Text,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Staircase length.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    /// Largest composed integer (defaults to the truncation order).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_n: Option<u32>,
    /// Series truncation order (defaults to max-n, or 20 when neither is given).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub trunc: Option<u32>,
    /// Generating-function strategy (see `methods`).
    #[arg(long, default_value = "closed")]
    pub method: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_n: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub trunc: Option<u32>,
    /// Largest n the brute-force oracle may enumerate.
    #[arg(long, default_value_t = staircase_core::oracle::DEFAULT_ENUMERATION_CAP)]
    pub cap: u32,
    /// Largest matrix handed to the direct determinant.
    #[arg(long, default_value_t = staircase_core::detengine::DEFAULT_DET_LIMIT)]
    pub det_limit: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CorollaryArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub parts: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    /// Also enumerate with the oracle and fail on disagreement.
    #[arg(long)]
    pub check: bool,
    #[arg(long, default_value_t = staircase_core::oracle::DEFAULT_ENUMERATION_CAP)]
    pub cap: u32,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    /// Integer whose compositions are enumerated.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), required_unless_present = "composition")]
    pub n: Option<u32>,
    /// Comma-separated parts, e.g. 4,3,1,2,3.
    #[arg(long, conflicts_with = "n")]
    pub composition: Option<String>,
    #[arg(long, default_value_t = staircase_core::oracle::DEFAULT_ENUMERATION_CAP)]
    pub cap: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DumpTarget {
    /// The generating function F.
    Gf,
    /// F at q = 1.
    Q1,
    /// dF/dq at q = 1, closed form.
    Dq,
    DetA,
    DetB,
    NDet,
    CDet,
}

#[derive(Debug, Args)]
pub struct DumpArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..))]
    pub trunc: u32,
    #[arg(long, value_enum, default_value_t = DumpTarget::Gf)]
    pub what: DumpTarget,
    /// Generating-function strategy for `gf`.
    #[arg(long, default_value = "closed")]
    pub method: String,
    /// closed or recurrence, for the determinant targets.
    #[arg(long, default_value = "closed")]
    pub mode: String,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Table(args) => commands::table(&args),
        Command::Verify(args) => commands::verify(&args),
        Command::Corollary(args) => commands::corollary(&args),
        Command::Oracle(args) => commands::oracle(&args),
        Command::SeriesDump(args) => commands::series_dump(&args),
        Command::Methods => commands::methods(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                CliError::Usage(_) => ExitCode::from(2),
                CliError::Mismatch(_) | CliError::Io(_) => ExitCode::from(1),
            }
        }
    }
}
