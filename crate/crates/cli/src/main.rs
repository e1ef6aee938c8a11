use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod render;

use commands::CliError;

/// Build, analyze and simulate unified probability spaces for measurement contexts.
#[derive(Parser)]
#[command(name = "contextspace", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
pub struct WeightArgs {
    /// Side-A gate probabilities, comma separated (default: uniform)
    #[arg(long = "weights-a", value_name = "CSV FLOATS")]
    pub weights_a: Option<String>,
    /// Side-B gate probabilities, comma separated (default: uniform)
    #[arg(long = "weights-b", value_name = "CSV FLOATS")]
    pub weights_b: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the unified space and write its sorted atom dump
    Build {
        family: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        /// Dump destination (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report conditional and absolute correlations, CHSH and bound verdicts
    Analyze {
        family: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        /// Print the machine-readable JSON report
        #[arg(long)]
        json: bool,
    },
    /// Simulate trials and compare the empirical estimates with the exact space
    Simulate {
        family: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trial-record CSV destination
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        weights: WeightArgs,
        /// Smallest allowed deviation in the convergence check
        #[arg(long, default_value_t = 0.01)]
        tolerance: f64,
        #[arg(long)]
        json: bool,
    },
    /// Estimate correlations and bounds from a trial-record CSV
    Ingest {
        records: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Validate a family and report no-signaling and gate independence
    Check {
        family: PathBuf,
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let output = match cli.command {
        Command::Build { family, weights, out } => commands::build(&family, &weights, out.as_deref())?,
        Command::Analyze { family, weights, json } => commands::analyze(&family, &weights)?.select(json),
        Command::Simulate {
            family,
            trials,
            seed,
            out,
            weights,
            tolerance,
            json,
        } => commands::simulate(&family, &weights, trials, seed, out.as_deref(), tolerance)?.select(json),
        Command::Ingest { records, m, n, json } => commands::ingest(&records, m, n)?.select(json),
        Command::Check { family, weights, json } => commands::check(&family, &weights)?.select(json),
    };
    print!("{output}");
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(e.exit_code())
        }
    }
}
