use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod bench;
mod commands;
mod config;
mod error;

/// Categorical edge clustering of edge-labeled graphs and hypergraphs.
///
/// Exit codes: 1 for unreadable input or bad parameters, 2 when the
/// algorithm cannot handle the instance, 3 when a solver fails.
/// The LP backend is read from CATEC_LP_SOLVER (`embedded` or
/// `external:<path>`) unless --solver is given.
#[derive(Parser)]
#[command(name = "catec", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cluster an instance and write the clustering and a report.
    Solve(SolveArgs),
    /// Generate synthetic or derived instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Score a clustering.
    Eval(EvalArgs),
    /// Drop nodes that are guaranteed to cause more than beta mistakes.
    Filter(FilterArgs),
    /// Run a benchmark suite and collect reports as JSON lines.
    Bench(BenchArgs),
    /// Build an instance from parallel edge and label files.
    Convert(ConvertArgs),
    /// Write the LP relaxation or the two-category flow network.
    Export(ExportArgs),
    /// Aggregate a JSON-lines report file by instance and algorithm.
    Summarize(SummarizeArgs),
}

#[derive(Args)]
pub struct SolveArgs {
    pub instance: PathBuf,
    /// exact2, lp-round, lp-rand, isocut, mv, cb or lcb.
    #[arg(long)]
    pub alg: Option<String>,
    /// Clustering output; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Report output as one JSON object.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Rounding threshold for lp-rand, in [1/2, 2/3].
    #[arg(long)]
    pub t: Option<f64>,
    /// Also compute the LP lower bound.
    #[arg(long)]
    pub bound: bool,
    /// LP backend: embedded or external:<path>.
    #[arg(long)]
    pub solver: Option<String>,
    /// TOML file with defaults for the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct ModelArgs {
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Upper bound on the number of clusters.
    #[arg(long = "K", default_value_t = 15)]
    pub clusters: usize,
    /// Upper bound on the number of colors.
    #[arg(long = "L", default_value_t = 15)]
    pub colors: usize,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub q: f64,
    /// Probability that an inside edge gets a random color.
    #[arg(long, default_value_t = 0.0)]
    pub w: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: PathBuf,
    /// Node ground truth, written as a clustering.
    #[arg(long)]
    pub truth: Option<PathBuf>,
}

#[derive(Subcommand)]
pub enum GenCommand {
    /// Planted chromatic graph.
    ChromaticGraph(ModelArgs),
    /// Planted chromatic r-uniform hypergraph (K = L).
    ChromaticHypergraph {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 3)]
        r: usize,
        /// Tuple classes larger than this are sampled, not enumerated.
        #[arg(long, default_value_t = catec_core::synthetic::DEFAULT_TUPLE_BUDGET)]
        budget: u64,
    },
    /// Label timestamped edges by time window.
    TimeBins {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Relabel an instance's edges from node ground truth with noise.
    NoisyLabels {
        instance: PathBuf,
        #[arg(long)]
        truth: PathBuf,
        #[arg(long)]
        w: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: PathBuf,
    },
}

#[derive(Args)]
pub struct EvalArgs {
    pub instance: PathBuf,
    pub clustering: PathBuf,
    /// Ground-truth clustering for accuracy, ARI and F-score.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Timestamped edges over the same node ids.
    #[arg(long)]
    pub temporal: Option<PathBuf>,
    /// Compute the LP lower bound and the approximation ratio.
    #[arg(long)]
    pub bound: bool,
    #[arg(long)]
    pub solver: Option<String>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct FilterArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, short)]
    pub out: PathBuf,
    /// Ids of removed nodes, one per line.
    #[arg(long)]
    pub removed: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args)]
pub struct BenchArgs {
    /// TOML suite listing instances, algorithms and seeds.
    pub suite: PathBuf,
    /// JSON-lines results; rows already present are skipped.
    #[arg(long, short)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Also write every row as CSV.
    #[arg(long)]
    pub emit_csv: Option<PathBuf>,
    #[arg(long)]
    pub solver: Option<String>,
}

#[derive(Args)]
pub struct ConvertArgs {
    /// One edge per line, node ids separated by whitespace or commas.
    #[arg(long)]
    pub edges: PathBuf,
    /// One label per line, parallel to the edge file.
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct ExportArgs {
    pub instance: PathBuf,
    /// LP relaxation in CPLEX LP format.
    #[arg(long)]
    pub lp: Option<PathBuf>,
    /// Two-category flow network in DIMACS max-flow format.
    #[arg(long)]
    pub dimacs: Option<PathBuf>,
}

#[derive(Args)]
pub struct SummarizeArgs {
    pub results: PathBuf,
    /// Write every row as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(error::EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Solve(args) => commands::solve(args),
        Command::Gen(cmd) => commands::generate(cmd),
        Command::Eval(args) => commands::eval(args),
        Command::Filter(args) => commands::filter(args),
        Command::Bench(args) => bench::run(args),
        Command::Convert(args) => commands::convert(args),
        Command::Export(args) => commands::export(args),
        Command::Summarize(args) => commands::summarize(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("catec: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
