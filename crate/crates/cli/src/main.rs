//! `apf`: persistence diagrams of planar point clouds and height graphs,
//! accumulated persistence functions, and the statistical procedures built on
//! them, as file-to-file pipelines.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

mod commands;
mod error;
mod io;
mod svg;

#[derive(Parser)]
#[command(
    name = "apf",
    version,
    about = "Persistence diagrams, accumulated persistence functions, and statistics on them"
)]
struct Cli {
    /// Worker threads for simulations and bootstrap loops (0 = one per CPU).
    /// Outputs are byte-identical for every setting.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw a point pattern from a point-process model and write it as CSV
    Simulate(SimulateArgs),
    /// Persistence diagram of a point cloud (alpha complex) or height graph
    Ph(PhArgs),
    /// Discretized accumulated persistence function of a diagram
    Apf(ApfArgs),
    /// Extreme rank envelope test of observed points against a null model
    Envelope(EnvelopeArgs),
    /// Functional boxplot with outlier detection over a set of curves
    Boxplot(BoxplotArgs),
    /// Bootstrap confidence band for the mean curve
    CiMean(CiMeanArgs),
    /// Bootstrap two-sample test between two sets of curves
    TwoSample(TwoSampleArgs),
    /// K-means clustering of curves
    Cluster(ClusterArgs),
    /// Assign a curve to the group with the nearest trimmed mean
    Classify(ClassifyArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Model {
    /// Homogeneous Poisson process
    Csr,
    /// Baddeley-Silverman cell process
    Cells,
    /// Matérn cluster process
    MaternCluster,
    /// Matérn II hard-core process
    Hardcore,
    /// IID points on circles with truncated normal noise
    Circles,
}

/// Point-process model selection, shared by `simulate` and the null model of
/// `envelope`.
#[derive(Args, Serialize, Clone)]
struct ModelArgs {
    #[arg(long, value_enum)]
    model: Model,
    /// csr: intensity (mean points per unit area)
    #[arg(long)]
    rho: Option<f64>,
    /// matern-cluster: parent intensity
    #[arg(long)]
    kappa: Option<f64>,
    /// matern-cluster: cluster disc radius
    #[arg(long)]
    cluster_radius: Option<f64>,
    /// matern-cluster: mean offspring per parent
    #[arg(long)]
    mu: Option<f64>,
    /// hardcore: proposal intensity
    #[arg(long)]
    beta: Option<f64>,
    /// hardcore: minimum inter-point distance
    #[arg(long)]
    hardcore_dist: Option<f64>,
    /// circles: "cx,cy,r;cx,cy,r;..."
    #[arg(long)]
    circles: Option<String>,
    /// circles: number of points
    #[arg(long)]
    n: Option<usize>,
    /// circles: noise standard deviation
    #[arg(long, default_value_t = 0.0)]
    sigma: f64,
    /// Observation window "x0:x1,y0:y1"
    #[arg(long, default_value = "0:1,0:1")]
    sim_window: String,
}

#[derive(Args, Serialize)]
struct SimulateArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum TieBreakArg {
    /// Smallest original index survives an equal-birth merge
    Deterministic,
    /// Equal-birth merges decided by seeded coin flips
    Seeded,
}

#[derive(Args, Serialize)]
struct PhArgs {
    /// Point cloud CSV (alpha-complex persistence)
    #[arg(long, conflicts_with = "graph", required_unless_present = "graph")]
    points: Option<PathBuf>,
    /// Height-graph file (sub-level persistence, dimension 0 only)
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Homology dimension (0 or 1)
    #[arg(long, default_value_t = 0)]
    k: usize,
    #[arg(long, value_enum, default_value_t = TieBreakArg::Deterministic)]
    tiebreak: TieBreakArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Serialize)]
struct ApfArgs {
    /// Diagram JSON produced by `ph`
    #[arg(long)]
    diagram: PathBuf,
    /// Evaluation window "T1:T2"
    #[arg(long)]
    window: String,
    /// Grid points across the window
    #[arg(long, default_value_t = 2500)]
    grid: usize,
    /// Drop features with meanage + lifetime/2 beyond this allocated time
    #[arg(long)]
    truncate: Option<f64>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Serialize)]
struct EnvelopeArgs {
    /// Observed point cloud CSV
    #[arg(long)]
    observed: PathBuf,
    /// Homology dimensions, e.g. "0", "1", or "0,1" (combined test)
    #[arg(long, default_value = "0")]
    k: String,
    #[command(flatten)]
    null: ModelArgs,
    /// Number of null simulations
    #[arg(long, default_value_t = 2499)]
    r: usize,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Curve window "T1:T2"
    #[arg(long)]
    window: String,
    #[arg(long, default_value_t = 2500)]
    grid: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Prefix for the decision JSON, band CSVs, and SVG plots
    #[arg(long)]
    out_prefix: String,
}

#[derive(Args, Serialize)]
struct BoxplotArgs {
    /// Curve CSVs on one shared grid
    #[arg(long, num_args = 1.., required = true)]
    curves: Vec<PathBuf>,
    /// Fence inflation factor (times the central-envelope range)
    #[arg(long, default_value_t = 1.5)]
    inflation: f64,
    #[arg(long)]
    out_prefix: String,
}

#[derive(Args, Serialize)]
struct CiMeanArgs {
    #[arg(long, num_args = 1.., required = true)]
    curves: Vec<PathBuf>,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Bootstrap iterations
    #[arg(long = "B", default_value_t = 1000)]
    b: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out_prefix: String,
}

#[derive(Clone, Copy, PartialEq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum StatisticArg {
    Ks,
    L1,
}

#[derive(Args, Serialize)]
struct TwoSampleArgs {
    #[arg(long, num_args = 1.., required = true)]
    group_a: Vec<PathBuf>,
    #[arg(long, num_args = 1.., required = true)]
    group_b: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = StatisticArg::Ks)]
    statistic: StatisticArg,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long = "B", default_value_t = 1000)]
    b: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Restriction interval "T1:T2" (defaults to the full curve window)
    #[arg(long)]
    interval: Option<String>,
    #[arg(long)]
    out_prefix: String,
}

#[derive(Args, Serialize)]
struct ClusterArgs {
    #[arg(long, num_args = 1.., required = true)]
    curves: Vec<PathBuf>,
    /// Number of clusters
    #[arg(long)]
    clusters: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    max_iter: usize,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Serialize)]
struct ClassifyArgs {
    /// Curve to assign
    #[arg(long)]
    query: PathBuf,
    /// One group per flag: comma-separated curve CSVs
    #[arg(long = "group", num_args = 1.., required = true)]
    groups: Vec<String>,
    /// Trim fraction for the group means
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    #[arg(long)]
    out: PathBuf,
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    std::process::exit(0);
                }
                _ => {
                    eprint!("{e}");
                    std::process::exit(1);
                }
            }
        }
    };
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    if let Err(e) = commands::run(&cli) {
        eprintln!("{}", e.to_json());
        std::process::exit(e.exit_code());
    }
}
