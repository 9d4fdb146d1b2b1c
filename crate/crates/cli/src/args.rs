use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "ecgkit", version, about = "Ensemble clustering for graphs and its benchmark harness")]
pub struct Cli {
    /// Worker threads for ensemble runs and benchmark cells.
    #[arg(long, global = true, env = "ECGKIT_WORKERS")]
    pub workers: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Cluster a graph with multilevel Louvain or its first level only.
    Cluster(ClusterArgs),
    /// Run ECG and write the partition, consensus weights and a summary.
    Ecg(EcgArgs),
    /// Community strength indicator of a weighted edge list.
    Csi(CsiArgs),
    /// Compare a partition against a reference.
    Compare(CompareArgs),
    /// Mean pairwise similarity across repeated runs.
    Stability(StabilityArgs),
    /// Generate synthetic graphs with ground truth.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Extract the thresholded sub-graph around a seed vertex.
    Dimmer(DimmerArgs),
    /// Community-aware anomaly scores.
    Cada(CadaArgs),
    /// Sweep a parameter grid and tabulate per-run results.
    #[command(subcommand)]
    Bench(BenchCommand),
    /// Re-run the command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct GraphInput {
    /// Edge list file.
    #[arg(long)]
    pub input: PathBuf,
    /// Vertex ids in the input files start at 1.
    #[arg(long)]
    pub one_based: bool,
    /// Read the third column of the edge list as the edge weight.
    #[arg(long)]
    pub weighted: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct OutDir {
    /// Output directory (created if missing).
    #[arg(long)]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterAlgo {
    Ml,
    Level1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Ml,
    Ecg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CombineArg {
    Replace,
    Multiply,
}

#[derive(Debug, Args, Serialize)]
pub struct EcgOptions {
    /// Number of level-1 runs in the ensemble.
    #[arg(long, default_value_t = ecgkit::ecg::DEFAULT_ENSEMBLE_SIZE)]
    pub ens_size: usize,
    /// Minimum consensus weight, in (0, 1).
    #[arg(long, default_value_t = ecgkit::ecg::DEFAULT_MIN_WEIGHT)]
    pub min_weight: f64,
}

#[derive(Debug, Args, Serialize)]
pub struct ClusterArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, value_enum, default_value_t = ClusterAlgo::Ml)]
    pub algo: ClusterAlgo,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutDir,
}

#[derive(Debug, Args, Serialize)]
pub struct EcgArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[command(flatten)]
    pub ecg: EcgOptions,
    #[arg(long)]
    pub seed: Option<u64>,
    /// How input weights enter the final clustering pass.
    #[arg(long, value_enum, default_value_t = CombineArg::Replace)]
    pub combine: CombineArg,
    #[command(flatten)]
    pub out: OutDir,
}

#[derive(Debug, Args, Serialize)]
pub struct CsiArgs {
    /// Weighted edge list of consensus weights.
    #[arg(long)]
    pub weights: PathBuf,
    #[arg(long)]
    pub one_based: bool,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    /// Reference partition.
    #[arg(long)]
    pub truth: PathBuf,
    /// Partition to evaluate.
    #[arg(long)]
    pub found: PathBuf,
    /// Edge list, needed for the graph-aware index.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[arg(long)]
    pub one_based: bool,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct StabilityArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, value_enum, default_value_t = Algo::Ecg)]
    pub algo: Algo,
    #[arg(long, default_value_t = 2)]
    pub runs: usize,
    #[command(flatten)]
    pub ecg: EcgOptions,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenerateCommand {
    /// Ring of cliques.
    Ring(RingArgs),
    /// Planted partition (stochastic block model).
    Sbm(SbmArgs),
    /// Configuration-model graph on the degree sequence of the input.
    Null(NullArgs),
    /// Append anomalous vertices to a graph.
    Anomalies(AnomalyArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct RingArgs {
    /// Number of cliques.
    #[arg(long)]
    pub cliques: usize,
    /// Vertices per clique.
    #[arg(long)]
    pub size: usize,
    /// Edges between consecutive cliques.
    #[arg(long, default_value_t = 1)]
    pub between: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutDir,
}

#[derive(Debug, Args, Serialize)]
pub struct SbmArgs {
    /// Block sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub pin: f64,
    #[arg(long)]
    pub pout: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutDir,
}

#[derive(Debug, Args, Serialize)]
pub struct NullArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutDir,
}

#[derive(Debug, Args, Serialize)]
pub struct AnomalyArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    /// Ground-truth partition of the input (defaults to one cluster).
    #[arg(long)]
    pub truth: Option<PathBuf>,
    #[arg(long)]
    pub count: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutDir,
}

#[derive(Debug, Args, Serialize)]
pub struct DimmerArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    /// Consensus weights as a weighted edge list over the same edges.
    #[arg(long)]
    pub weights: PathBuf,
    /// Partition whose cluster around the seed is explored.
    #[arg(long)]
    pub partition: PathBuf,
    #[arg(long)]
    pub seed_vertex: u64,
    /// Edges with weight strictly below this are dropped.
    #[arg(long, default_value_t = 0.0)]
    pub theta: f64,
    /// Also tabulate sub-graph sizes over a threshold sweep.
    #[arg(long)]
    pub profile: bool,
    /// Evenly spaced thresholds in the sweep.
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[command(flatten)]
    pub out: OutDir,
}

#[derive(Debug, Args, Serialize)]
pub struct CadaArgs {
    #[command(flatten)]
    pub graph: GraphInput,
    #[arg(long, value_enum, default_value_t = Algo::Ecg)]
    pub algo: Algo,
    #[command(flatten)]
    pub ecg: EcgOptions,
    /// Vertex mask of known anomalies; enables the AUC.
    #[arg(long)]
    pub anomalies: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutDir,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchCommand {
    /// Rings of cliques over a range of clique counts.
    Ring(BenchRingArgs),
    /// Planted partitions over a grid of inter-block probabilities.
    Sbm(BenchSbmArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct BenchCommon {
    /// Algorithms to run, comma separated.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "ml,ecg")]
    pub algos: Vec<Algo>,
    /// Graphs generated per grid point.
    #[arg(long, default_value_t = 5)]
    pub seeds: usize,
    #[command(flatten)]
    pub ecg: EcgOptions,
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub out: OutDir,
}

#[derive(Debug, Args, Serialize)]
pub struct BenchRingArgs {
    /// Clique counts as `start..end` (inclusive) or a comma list.
    #[arg(long)]
    pub cliques: String,
    /// Increment for a `start..end` range.
    #[arg(long, default_value_t = 1)]
    pub step: usize,
    #[arg(long)]
    pub size: usize,
    #[arg(long, default_value_t = 1)]
    pub between: usize,
    #[command(flatten)]
    pub common: BenchCommon,
}

#[derive(Debug, Args, Serialize)]
pub struct BenchSbmArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub pin: f64,
    /// Inter-block probabilities, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub pout: Vec<f64>,
    #[command(flatten)]
    pub common: BenchCommon,
}

#[derive(Debug, Args, Serialize)]
pub struct ReplayArgs {
    /// Manifest written by an earlier run.
    #[arg(long)]
    pub manifest: PathBuf,
    #[command(flatten)]
    pub out: OutDir,
}
