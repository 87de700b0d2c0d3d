mod commands;
mod runner;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mcgraph::codec::Format;
use mcgraph::families::Family;

/// Workbench for matching covered graphs.
#[derive(Parser)]
#[command(name = "mcgraph", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit members of a named family.
    Gen(GenArgs),
    /// Emit every connected graph, or every connected balanced bipartite
    /// graph, of the given orders, up to isomorphism.
    Enumerate(EnumerateArgs),
    /// One structural record per input graph.
    Classify(InputArgs),
    /// Run registered checks over the input graphs.
    Check(CheckArgs),
    /// Tight cut decomposition into bricks and braces.
    Decompose(DecomposeArgs),
    /// Perfect matchings of each input graph.
    Matchings(MatchingsArgs),
    /// Compare fast routines against definitional ones on small graphs.
    Selftest(SelftestArgs),
    /// List the registered checks.
    ListChecks,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// Inclusive range of parameters, `a..b`.
    #[arg(long, value_parser = parse_range, conflicts_with = "n")]
    n_range: Option<(usize, usize)>,
    #[arg(long, default_value = "elist")]
    format: Format,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_parser = parse_range, conflicts_with = "n")]
    n_range: Option<(usize, usize)>,
    /// Only connected bipartite graphs with two colour classes of equal size.
    #[arg(long)]
    bipartite: bool,
    #[arg(long, default_value = "g6")]
    format: Format,
}

#[derive(Args, Clone)]
pub struct InputArgs {
    /// Input file; stdin when absent or `-`.
    #[arg(long, conflicts_with = "family")]
    input: Option<String>,
    #[arg(long, default_value = "g6")]
    format: Format,
    /// Use members of a named family instead of an input stream.
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, requires = "family")]
    n: Option<usize>,
    #[arg(long, value_parser = parse_range, requires = "family", conflicts_with = "n")]
    n_range: Option<(usize, usize)>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Check ids, comma separated or repeated; `all` for every check.
    #[arg(long, value_delimiter = ',', required = true)]
    check: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Print per-check tallies to stderr.
    #[arg(long)]
    summary: bool,
    /// Emit report lines only for failures.
    #[arg(long)]
    fails_only: bool,
    /// Write each failing graph as an edge list to this file.
    #[arg(long)]
    counterexample_out: Option<String>,
    /// Add per-check wall time to each report line.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct DecomposeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct MatchingsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Largest number of matchings listed per graph.
    #[arg(long, default_value_t = 64)]
    limit: usize,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 8)]
    max_n: usize,
    #[arg(long, default_value_t = 10)]
    brace_max_n: usize,
    #[arg(long)]
    summary: bool,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let a = parse(s)?;
            (a, a)
        }
    };
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

fn params(n: Option<usize>, range: Option<(usize, usize)>) -> Vec<Option<usize>> {
    match (n, range) {
        (_, Some((a, b))) => (a..=b).map(Some).collect(),
        (n, None) => vec![n],
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = match cli.command {
        Command::Gen(a) => commands::gen(a.family, params(a.n, a.n_range), a.format),
        Command::Enumerate(a) => {
            let orders = match params(a.n, a.n_range).as_slice() {
                [None] => Err("enumerate needs --n or --n-range".to_string()),
                p => Ok(p.iter().flatten().copied().collect::<Vec<_>>()),
            };
            orders.and_then(|o| commands::enumerate(&o, a.bipartite, a.format))
        }
        Command::Classify(a) => commands::classify(&a),
        Command::Check(a) => commands::check(&commands::CheckOptions {
            input: a.input,
            checks: a.check,
            seed: a.seed,
            summary: a.summary,
            fails_only: a.fails_only,
            counterexample_out: a.counterexample_out,
            timing: a.timing,
        }),
        Command::Decompose(a) => commands::decompose(&a.input, a.seed),
        Command::Matchings(a) => commands::matchings(&a.input, a.limit),
        Command::Selftest(a) => commands::selftest(a.max_n, a.brace_max_n, a.summary),
        Command::ListChecks => commands::list_checks(),
    };
    match status {
        Ok(s) => ExitCode::from(s as u8),
        Err(msg) => {
            eprintln!("mcgraph: {msg}");
            ExitCode::from(commands::Status::Usage as u8)
        }
    }
}
