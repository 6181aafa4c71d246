mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "plclass", version, about = "Census and PL classification of 4-manifold triangulations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate closed orientable triangulations with a given number of pentachora.
    Census(CensusArgs),
    /// Inspect a single triangulation.
    #[command(subcommand)]
    Tri(TriCommand),
    /// Sort a census into PL-homeomorphism classes.
    #[command(subcommand)]
    Classify(ClassifyCommand),
    /// Bounded searches of the Pachner graph.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Certificate tools.
    #[command(subcommand)]
    Cert(CertCommand),
}

#[derive(Args)]
pub struct CensusArgs {
    /// Number of pentachora; must be even.
    #[arg(long)]
    pub size: usize,
    /// Signature file to write (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON summary to write (stderr if omitted).
    #[arg(long)]
    pub summary: Option<PathBuf>,
    /// Worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand)]
enum TriCommand {
    /// Print f-vector, Euler characteristic, homology and validity as JSON.
    Invariants(InvariantsArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Native,
    External,
}

#[derive(Args)]
pub struct InvariantsArgs {
    #[arg(long)]
    pub sig: String,
    #[arg(long, value_enum, default_value_t = Format::Native)]
    pub format: Format,
}

#[derive(Subcommand)]
enum ClassifyCommand {
    /// Run the classification on every invariant part of a signature file.
    Run(ClassifyArgs),
}

#[derive(Args)]
pub struct ClassifyArgs {
    /// Signature file, native or external.
    #[arg(long)]
    pub input: PathBuf,
    /// Run configuration (defaults if omitted).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Report to write (stdout if omitted).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Directory receiving one JSON certificate per merge.
    #[arg(long)]
    pub certs: Option<PathBuf>,
    /// Overrides the seeds in the configuration.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Subcommand)]
enum SearchCommand {
    /// Breadth-first traversal of the Pachner graph up to a height bound.
    Exhaust(ExhaustArgs),
}

#[derive(Args)]
pub struct ExhaustArgs {
    #[arg(long)]
    pub sig: String,
    #[arg(long, value_enum, default_value_t = Format::Native)]
    pub format: Format,
    /// Signature file of targets.
    #[arg(long)]
    pub targets: PathBuf,
    /// Pentachora allowed above the starting size.
    #[arg(long)]
    pub excess: Option<usize>,
    /// Run configuration supplying the traversal limits.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Where to write the connecting certificate, if one is found.
    #[arg(long)]
    pub cert: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CertCommand {
    /// Replay a certificate; exits 0 iff it is valid.
    Verify(VerifyArgs),
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub cert: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Census(a) => commands::census(a),
        Command::Tri(TriCommand::Invariants(a)) => commands::invariants(a),
        Command::Classify(ClassifyCommand::Run(a)) => commands::classify(a),
        Command::Search(SearchCommand::Exhaust(a)) => commands::exhaust(a),
        Command::Cert(CertCommand::Verify(a)) => commands::verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.exit_code())
        }
    }
}
