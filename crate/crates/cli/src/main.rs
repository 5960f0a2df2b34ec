use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use motif_srp::srp::{DEFAULT_DELTA, DEFAULT_EPSILON, DEFAULT_REPLICAS};
use motif_srp::synthetic::Family;
use motif_srp::Variant;

mod commands;
mod report;

#[derive(Debug, Parser)]
#[command(name = "motif-srp", version, about = "Motif ratio-profile embeddings for temporal networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count temporal motifs (or the triad census) of one edge list.
    Count(CountArgs),
    /// Embed one or more edge lists, one CSV row per file.
    Embed(EmbedArgs),
    /// Build a labelled collection for a task and embed it.
    Dataset(DatasetArgs),
    /// Write a synthetic edge list.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
struct CountArgs {
    input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: i64,
    /// Triad census of the aggregated digraph instead of temporal motifs.
    #[arg(long = "static")]
    static_census: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    keep_self_loops: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Temporal,
    Static,
    TempStatic,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Temporal => Variant::Temporal,
            VariantArg::Static => Variant::Static,
            VariantArg::TempStatic => Variant::TempStatic,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct EmbedOpts {
    #[arg(long, default_value_t = DEFAULT_DELTA)]
    delta: i64,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, default_value_t = DEFAULT_REPLICAS)]
    replicas: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = VariantArg::TempStatic)]
    variant: VariantArg,
    /// Worker threads (defaults to available parallelism).
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long)]
    keep_self_loops: bool,
}

#[derive(Debug, Args)]
struct EmbedArgs {
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    /// Class label written for every row.
    #[arg(long, default_value_t = 0)]
    label: usize,
    #[command(flatten)]
    opts: EmbedOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TaskArg {
    /// Email department graphs (label 0) against daily app-switching graphs (label 1).
    Type,
    EmailDept,
    UserId,
    /// Synthetic email-like (label 0) and switch-like (label 1) graphs.
    Synth,
}

#[derive(Debug, Args)]
struct DatasetArgs {
    #[arg(value_enum)]
    task: TaskArg,
    #[command(flatten)]
    opts: EmbedOpts,
    /// Email edge list (`SRC DST TIMESTAMP`).
    #[arg(long)]
    edges: Option<PathBuf>,
    /// Department labels (`NODE DEPARTMENT`).
    #[arg(long)]
    labels: Option<PathBuf>,
    #[arg(long, default_value_t = 28)]
    window_days: i64,
    #[arg(long, default_value_t = 28)]
    stride_days: i64,
    #[arg(long, default_value_t = 50)]
    min_edges: usize,
    #[arg(long, default_value_t = 10)]
    min_size: usize,
    /// Per-user app-switching edge lists; the file stem is the user id.
    #[arg(long = "user-file")]
    user_files: Vec<PathBuf>,
    /// Generate this many synthetic users instead of reading user files.
    #[arg(long)]
    synth_users: Option<usize>,
    #[arg(long, default_value_t = 42)]
    days: usize,
    /// Graphs per family for the synthetic type task.
    #[arg(long, default_value_t = 20)]
    per_family: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Email,
    Switch,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Email => Family::EmailLike,
            FamilyArg::Switch => Family::SwitchLike,
        }
    }
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long)]
    nodes: usize,
    #[arg(long)]
    edges: usize,
    /// Time span in seconds.
    #[arg(long, default_value_t = 86_400)]
    span: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}
