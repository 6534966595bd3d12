//! `clairvoyant`: decide embeddings, list level-1 structures, tabulate the
//! scale-up parameters and run the Monte Carlo experiments.
//!
//! Exit status: 0 success or a positive answer, 1 a legitimate negative
//! answer, 2 a usage or input error.

mod commands;
mod config;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "clairvoyant", version, about = "Bounded-gap embeddings of binary sequences")]
#[command(args_override_self = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether Y[1..L] m-embeds into X.
    Embed(EmbedArgs),
    /// List level-1 walls, holes and spanning sequences as JSON lines.
    Analyze(AnalyzeArgs),
    /// Tabulate the parameters of levels 1..K and check the exponents.
    Params(ParamsArgs),
    /// Estimate embedding probabilities over ranges of m and L.
    Simulate(SimulateArgs),
    /// Run a quick internal consistency check.
    Selftest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: String,
    #[arg(long)]
    m: usize,
    /// Prefix length of Y; defaults to all of Y.
    #[arg(long = "L")]
    l: Option<usize>,
    #[arg(long)]
    witness: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    x: String,
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    holes: bool,
    #[arg(long)]
    span: bool,
    /// Minimum size of the external gaps separating spanned clusters;
    /// defaults to the level-1 scale parameter rounded up.
    #[arg(long)]
    delta: Option<i64>,
}

#[derive(Debug, Args)]
struct ParamsArgs {
    #[arg(long)]
    m: u32,
    #[arg(long, default_value_t = 8)]
    levels: u32,
    /// `key=value` overrides of delta, gamma, phi, tau, tau_prime, omega, chi.
    #[arg(long)]
    exponents: Option<String>,
    #[arg(long, default_value_t = 10.0)]
    lambda_cap: f64,
    #[arg(long, default_value_t = 0.25)]
    c2: f64,
    #[arg(long, default_value_t = 4.0)]
    c3: f64,
    /// Level-1 rank bound; defaults to 2m.
    #[arg(long)]
    r1: Option<String>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Inclusive range `A..B`.
    #[arg(long, value_parser = parse_range)]
    m_range: (usize, usize),
    #[arg(long = "L-range", value_parser = parse_range)]
    l_range: Option<(usize, usize)>,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, env = "CLAIRVOYANT_SEED", default_value_t = 0)]
    seed: u64,
    /// Length of X; defaults to m·L.
    #[arg(long)]
    x_length: Option<usize>,
    /// Run a frequency check instead of the embedding sweep.
    #[arg(long, value_enum)]
    check: Option<Check>,
    /// Wall size for `--check walls`; defaults to m.
    #[arg(long)]
    wall_size: Option<usize>,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Check {
    Walls,
    Holes,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let a: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

fn main() -> ExitCode {
    let args = match config::expand(std::env::args().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let cli = Cli::parse_from(args);
    let result = match cli.command {
        Command::Embed(a) => commands::embed(a),
        Command::Analyze(a) => commands::analyze(a),
        Command::Params(a) => commands::params(a),
        Command::Simulate(a) => commands::simulate(a),
        Command::Selftest => commands::selftest(),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
