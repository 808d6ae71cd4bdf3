//! `minhit`: enumerate, count and check minimal hitting sets.
//!
//! Exit codes: 0 on a complete result, 2 when enumeration stopped early
//! (limit, time budget or engine cap), 1 on input or argument errors.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minhit::engines::EngineKind;

#[derive(Parser, Debug)]
#[command(name = "minhit", version, about = "Minimal hitting set enumeration")]
struct Cli {
    /// Print diagnostics to stderr.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print every minimal hitting set, one per line.
    Enumerate(EnumerateArgs),
    /// Print the number of minimal hitting sets.
    Count(CountArgs),
    /// Classify a candidate set as not-hitting, hitting-not-minimal or minimal.
    Check(CheckArgs),
    /// Print the disjunctive program for the instance in ASP-Core-2 syntax.
    EmitAsp(InputArg),
    /// Print |S|, |U| and the mean set size.
    Stats(InputArg),
    /// Write a random instance.
    Gen(GenArgs),
    /// Time engines over instances and write the harness CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct InputArg {
    /// Instance file, or `-` for stdin.
    input: PathBuf,
}

#[derive(Args, Debug)]
struct EngineArgs {
    #[arg(long, default_value = "mmcs")]
    engine: EngineKind,
    /// Stop after this many minimal hitting sets.
    #[arg(long)]
    limit: Option<usize>,
    /// Give up after this many seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Drop duplicate and superset sets before enumerating.
    #[arg(long)]
    minimize_input: bool,
    /// Cap on Berge's intermediate collection.
    #[arg(long, default_value_t = minhit::engines::DEFAULT_BERGE_CAP)]
    berge_cap: usize,
    /// Let Berge process sets by ascending size.
    #[arg(long)]
    berge_sort: bool,
}

#[derive(Args, Debug)]
struct EnumerateArgs {
    #[command(flatten)]
    input: InputArg,
    #[command(flatten)]
    engine: EngineArgs,
    /// Keep only sets with at most this many elements.
    #[arg(long)]
    size_bound: Option<usize>,
    /// Keep only sets containing these comma-separated elements.
    #[arg(long)]
    require: Option<String>,
    /// `<id> <weight>` file; print only the minimum-weight survivors.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// How to print the empty hitting set.
    #[arg(long, value_enum, default_value = "blank")]
    empty_as: EmptyAs,
    /// Append a `c count=<N>` line.
    #[arg(long)]
    count_trailer: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum EmptyAs {
    Blank,
    #[value(name = "EPS", alias = "eps")]
    Eps,
}

#[derive(Args, Debug)]
struct CountArgs {
    #[command(flatten)]
    input: InputArg,
    #[command(flatten)]
    engine: EngineArgs,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArg,
    /// Comma-separated element identifiers.
    #[arg(long, allow_hyphen_values = true)]
    candidate: String,
}

#[derive(Args, Debug, Clone)]
struct GenParams {
    #[arg(long, default_value_t = 20)]
    universe: usize,
    #[arg(long, default_value_t = 30)]
    sets: usize,
    #[arg(long, default_value_t = 2)]
    min_size: usize,
    #[arg(long, default_value_t = 5)]
    max_size: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[command(flatten)]
    params: GenParams,
    /// Output file (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Instance files.
    inputs: Vec<PathBuf>,
    /// Per-run budget in seconds.
    #[arg(long, default_value_t = 1000.0)]
    time_limit: f64,
    /// Comma-separated engine list.
    #[arg(long, value_delimiter = ',', default_value = "blocking,berge,mmcs")]
    engines: Vec<EngineKind>,
    /// Stats CSV destination (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Per-bucket summary CSV destination.
    #[arg(long)]
    summary: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Also run this many generated instances (seeded from --seed upward).
    #[arg(long, default_value_t = 0)]
    generate: usize,
    #[arg(long)]
    emit_limit: Option<usize>,
    #[arg(long, default_value_t = minhit::engines::DEFAULT_BERGE_CAP)]
    berge_cap: usize,
    #[command(flatten)]
    params: GenParams,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            let color = std::env::var("MHS_COLOR").is_ok_and(|v| v == "1");
            let label = if color {
                "\x1b[31merror\x1b[0m"
            } else {
                "error"
            };
            let _ = writeln!(std::io::stderr(), "{label}: {e:#}");
            ExitCode::from(1)
        }
    }
}
