//! `qwalk`: simulate the two-phase walk, evaluate its limit measures, and run
//! the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or configuration
//! error, 3 resource limit.

mod angle;
mod commands;
mod config;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qwalk_core::verify::Suite;

use crate::config::{Format, WalkArgs};
use crate::error::CliResult;

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "Two-phase quantum walk with a defect at the origin")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum SuiteArg {
    Mass,
    Gf,
    Residue,
    Converge,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Mass => Suite::Mass,
            SuiteArg::Gf => Suite::Gf,
            SuiteArg::Residue => Suite::Residue,
            SuiteArg::Converge => Suite::Converge,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evolve to time t and write the distribution
    Simulate {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = commands::DEFAULT_BIN_WIDTH)]
        bin_width: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Tabulate w(x), f_K(x) and the limit density; scalars go to a sidecar JSON
    Density {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = commands::DEFAULT_GRID_POINTS)]
        grid_points: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Tabulate the time-averaged measure on [-xmax, xmax]
    Timeavg {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = 10)]
        xmax: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run a verification suite and print a JSON report
    Verify {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        /// JSON list of random parameter tuples (defaults to the bundled fixture)
        #[arg(long)]
        seed_file: Option<PathBuf>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every configuration in a JSON list and write a summary
    Sweep {
        /// JSON list of run configurations
        #[arg(long)]
        seed_file: PathBuf,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Simulate {
            walk,
            t,
            bin_width,
            out,
            format,
        } => commands::simulate(&walk.walk()?, t, bin_width, &out, format),
        Command::Density {
            walk,
            grid_points,
            out,
            format,
        } => commands::density(&walk.walk()?, grid_points, &out, format).map(|_| ()),
        Command::Timeavg {
            walk,
            xmax,
            out,
            format,
        } => commands::timeavg(&walk.walk()?, xmax, &out, format),
        Command::Verify {
            walk,
            suite,
            seed_file,
            out,
        } => commands::verify(&walk.walk()?, suite.into(), seed_file.as_deref(), out.as_deref()),
        Command::Sweep { seed_file, out } => commands::sweep(&seed_file, &out).map(|_| ()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qwalk: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
