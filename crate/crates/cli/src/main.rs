//! `walshdj`: Walsh spectra, Deutsch-Jozsa simulation and the one-shot
//! experiments from the command line.
//!
//! Exit codes: 0 success, 1 usage, 2 I/O or parse failure, 3 a
//! probability-one invariant failed.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use walshdj_core::Problem;

#[derive(Debug, Parser)]
#[command(
    name = "walshdj",
    version,
    about = "Walsh spectra and one-shot Deutsch-Jozsa experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weight, nonlinearity, resiliency, spectrum class and best linear
    /// approximation of a .tt function.
    Analyze {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Largest accepted variable count.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Full Walsh spectrum, one line per mask.
    Walsh {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Algebraic normal form and degree.
    Anf {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Exact measurement distribution of one Deutsch-Jozsa run.
    Dj {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Largest simulated register.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Independent single-shot measurements.
    Sample {
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Writes a member of a function class as .tt.
    Generate {
        /// linear, affine, random, bent-mm, plateaued, noisy-linear:Ln or
        /// noisy-linear:LnEps.
        kind: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: Option<u64>,
        /// Mask of the (base) linear function; random when omitted.
        #[arg(long)]
        omega: Option<u64>,
        /// Constant term for `affine`.
        #[arg(long)]
        constant: bool,
        /// Flip exactly the class budget of entries (noisy-linear).
        #[arg(long)]
        force_worst_case: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Runs one of the problems P1..P7 and reports the success statistics.
    Experiment {
        problem: Problem,
        #[arg(long)]
        n: usize,
        /// Defaults to 10000, or 100000 for P7.
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Flip exactly the class budget of entries in every P6/P7 trial.
        #[arg(long)]
        force_worst_case: bool,
        /// JSON report path; the per-trial CSV goes next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Size of the noisy-linear class and its logarithmic bounds.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("walshdj: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
