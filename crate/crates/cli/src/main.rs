//! `digramkit`: mine instruction digrams from a Python corpus and measure
//! how much they shrink program search.
//!
//! Exit codes: 0 on success, 2 for bad input or usage, 3 when an internal
//! invariant fails.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use digramkit::{Error, SpaceModel};

#[derive(Parser, Debug)]
#[command(name = "digramkit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mine a digram table (and vocabulary sidecar) from a corpus.
    Mine(MineArgs),
    /// Frequency statistics for a digram table.
    Stats(StatsArgs),
    /// Cluster the instructions of program units into bounded subsets.
    Subsets(SubsetsArgs),
    /// Search-space sizes per subset under three regimes.
    Model(ModelArgs),
    /// Run synthesis tasks with and without the digram gate.
    Synth(SynthArgs),
    /// Print the synthesizer's instruction roster.
    Dsl,
    /// Cross-check the space model against explicit trees on random instances.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
struct MineArgs {
    /// Corpus root; each top-level directory is one repository.
    #[arg(long)]
    corpus: PathBuf,
    /// Output table (CSV); the vocabulary goes next to it with extension `.vocab`.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct StatsArgs {
    #[arg(long)]
    table: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the count histogram as CSV.
    #[arg(long)]
    histogram: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SubsetsArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long, default_value_t = 10)]
    max_subset_size: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct ModelArgs {
    #[arg(long)]
    table: PathBuf,
    #[arg(long)]
    subsets: PathBuf,
    /// Deepest level counted.
    #[arg(long, default_value_t = 10)]
    depth: usize,
    /// Minimum digram count to be allowed.
    #[arg(long, default_value_t = 1)]
    threshold: u64,
    #[arg(long, default_value = "tree")]
    model: SpaceModel,
    /// Report CSV.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct SynthArgs {
    /// Tasks as JSON Lines.
    #[arg(long)]
    tasks: PathBuf,
    /// Digram table used for the gated regimes.
    #[arg(long)]
    table: PathBuf,
    /// Subsets file; adds the subset regimes.
    #[arg(long)]
    subsets: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    depth: usize,
    #[arg(long, default_value_t = 1)]
    threshold: u64,
    /// Candidates evaluated per task and regime before giving up.
    #[arg(long, default_value_t = 1_000_000)]
    budget: u64,
    /// Comma-separated instruction names; defaults to the full roster.
    #[arg(long, value_delimiter = ',')]
    instructions: Option<Vec<String>>,
    /// Use no constants instead of the default pool {0, 1, "", []}.
    #[arg(long)]
    no_constants: bool,
    /// Results CSV; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    instances: usize,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Invariant(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Mine(a) => commands::mine(&a),
        Command::Stats(a) => commands::stats(&a),
        Command::Subsets(a) => commands::subsets(&a),
        Command::Model(a) => commands::model(&a),
        Command::Synth(a) => commands::synth(&a),
        Command::Dsl => commands::dsl(),
        Command::Check(a) => commands::check(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
