use std::path::PathBuf;

use asevo_core::generators::Model;
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "asevo", version, about = "AS-level topology evolution analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a corpus of monthly AS-path files into a snapshot store.
    Ingest(IngestArgs),
    /// Compute the metric series of a snapshot store.
    Metrics(MetricsArgs),
    /// Fit a two-phase growth model to one column of a metrics CSV.
    Fit(FitArgs),
    /// Grow a model topology and record its maximum-degree trajectory.
    Generate(GenerateArgs),
    /// Measure IPv6 links on the IPv4 graph of the same month.
    Tunnel(TunnelArgs),
    /// Regenerate SVG plots from the CSVs in an output directory.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Corpus root holding `<YYYY-MM>/<monitor>.paths` files.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Monitor-set file; every monitor is used when omitted.
    #[arg(long)]
    pub monitors: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Snapshot store written by `ingest`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// `exact` or `sampled:N`.
    #[arg(long, default_value = "exact")]
    pub aspl_mode: String,
    /// Seed for sampled ASPL sources.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Smallest degree used by the power-law fit.
    #[arg(long, default_value_t = 1)]
    pub kmin: usize,
    /// Also write one SVG per metric column.
    #[arg(long)]
    pub plots: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Metrics CSV written by `metrics`.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Column to fit: N, L, k_max, k_avg, aspl, C, rho or r.
    #[arg(long)]
    pub metric: String,
    #[arg(long, default_value_t = 6)]
    pub min_segment: usize,
    #[arg(long, default_value_t = 0.5)]
    pub parsimony: f64,
    /// File listing `YYYY-MM` dates to leave out, one per line.
    #[arg(long)]
    pub exclude_dates: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub model: Model,
    /// Target node count.
    #[arg(long, short = 'n')]
    pub nodes: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
    /// Links per step.
    #[arg(long)]
    pub m: Option<usize>,
    /// Seed ring size; defaults to max(m, 3).
    #[arg(long)]
    pub m0: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    /// Number of trajectory checkpoints.
    #[arg(long, default_value_t = 50)]
    pub checkpoints: usize,
}

#[derive(Debug, Args)]
pub struct TunnelArgs {
    /// IPv6 snapshot store.
    #[arg(long)]
    pub ipv6: PathBuf,
    /// IPv4 snapshot store.
    #[arg(long)]
    pub ipv4: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Output directory of an earlier command.
    #[arg(long)]
    pub input: PathBuf,
    /// Defaults to `<input>/report`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
