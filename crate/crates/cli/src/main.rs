//! `pathcoupling`: tables, weights, simulation, drift and stopping-time
//! experiments, counting, and a verification suite.

mod commands;
mod input;
mod report;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use report::{Format, Report};

#[derive(Parser, Debug, Serialize)]
#[command(name = "pathcoupling", version, about = "Path coupling analysis and simulation")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Master seed; every random choice derives from it.
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    /// Worker thread cap (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Decimal digits for the bipartite bounds.
    #[arg(long, env = "PATHCOUPLING_PRECISION", default_value_t = 50, global = true)]
    pub precision: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "lowercase", tag = "name")]
pub enum Command {
    /// Minimum palette table, f(m) thresholds, or β.
    Tables(TablesArgs),
    /// Exact metric weights or bipartite bounds.
    Weights(WeightsArgs),
    /// Run a single chain and record its trajectory.
    Simulate(SimulateArgs),
    /// One-step drift on random adjacent pairs.
    Drift(DriftArgs),
    /// Stopping-time estimates of α and p with the tail check.
    Stopping(StoppingArgs),
    /// Exact or approximate counting.
    Count(CountArgs),
    /// Run the verification suite; exits 2 if any check fails.
    Verify(VerifyArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Table1,
    F,
    Beta,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Printed,
    Symmetric,
}

#[derive(Args, Debug, Serialize)]
pub struct TablesArgs {
    #[arg(long, value_enum, default_value_t = TableKind::Table1)]
    pub what: TableKind,
    /// Form of α′_v used for the palette table.
    #[arg(long, value_enum, default_value_t = Variant::Printed)]
    pub variant: Variant,
    /// Largest m listed in the f table.
    #[arg(long, default_value_t = 16)]
    pub max_m: usize,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Indset,
    Tricol,
    Bipartite,
}

#[derive(Args, Debug, Serialize)]
pub struct WeightsArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Edge size (independent sets).
    #[arg(short, long)]
    pub m: Option<usize>,
    /// Maximum degree Δ.
    #[arg(short = 'd', long = "max-degree")]
    pub max_degree: u64,
    /// Palette size (colourings).
    #[arg(short, long)]
    pub q: Option<u64>,
    #[arg(long, value_enum, default_value_t = Variant::Printed)]
    pub variant: Variant,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ChainArg {
    Indset,
    Tricol,
    Multicolour,
    Scan,
}

#[derive(Args, Debug, Serialize)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub chain: ChainArg,
    /// Hypergraph file (indset, tricol) or bipartite file (multicolour, scan).
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub steps: u64,
    /// Palette size for the colouring chains.
    #[arg(short, long)]
    pub q: Option<u32>,
    /// Record every this many steps.
    #[arg(long, default_value_t = 1)]
    pub every: u64,
}

#[derive(Args, Debug, Serialize)]
pub struct DriftArgs {
    #[arg(long, value_enum)]
    pub chain: ChainArg,
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(short, long)]
    pub q: Option<u32>,
    /// Number of random adjacent pairs.
    #[arg(long, default_value_t = 10)]
    pub pairs: usize,
    /// Monte Carlo replicas (multicolour only).
    #[arg(long, default_value_t = 10_000)]
    pub reps: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum MetricArg {
    Hamming,
    Weighted,
}

#[derive(Args, Debug, Serialize)]
pub struct StoppingArgs {
    #[arg(long, value_enum, default_value_t = ChainArg::Indset)]
    pub chain: ChainArg,
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(short, long)]
    pub q: Option<u32>,
    /// Window for p = Pr[T ≤ k] (default n).
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    pub reps: u64,
    #[arg(long, default_value_t = 5)]
    pub pairs: usize,
    #[arg(long, value_enum, default_value_t = MetricArg::Hamming)]
    pub metric: MetricArg,
    /// Tail horizon (default 5k).
    #[arg(long)]
    pub horizon: Option<u64>,
    /// Also replay the chain to check the contraction of d′.
    #[arg(long)]
    pub replay: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    Brute,
    Approx,
}

#[derive(Args, Debug, Serialize)]
pub struct CountArgs {
    #[arg(long, value_enum, default_value_t = CountMode::Brute)]
    pub mode: CountMode,
    /// Hypergraph or DIMACS CNF file.
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.1)]
    pub delta: f64,
    /// Count proper colourings with this many colours instead (brute only).
    #[arg(short, long)]
    pub q: Option<u32>,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Quick,
    Full,
}

#[derive(Args, Debug, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Quick)]
    pub suite: Suite,
}

/// A user-facing error and its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn invalid(message: impl std::fmt::Display) -> Self {
        Self { code: 1, message: message.to_string() }
    }
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Tables(a) => commands::tables(cli, a),
        Command::Weights(a) => commands::weights(cli, a),
        Command::Simulate(a) => commands::simulate(cli, a),
        Command::Drift(a) => commands::drift(cli, a),
        Command::Stopping(a) => commands::stopping(cli, a),
        Command::Count(a) => commands::count(cli, a),
        Command::Verify(a) => verify::verify(cli, a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(t) = cli.threads {
        if t == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    match run(&cli) {
        Ok(report) => match report.emit(&cli) {
            Ok(()) => ExitCode::from(if report.failed { 2 } else { 0 }),
            Err(e) => {
                eprintln!("error: cannot write output: {e}");
                ExitCode::from(1)
            }
        },
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
