//! Evolution analysis of AS-level Internet topologies.
//!
//! The crate covers the whole pipeline: ingest monthly AS-path dumps into
//! [`Snapshot`]s, compute the metric suite over a [`SnapshotSeries`], locate
//! growth-regime changes with two-segment exponential/linear fits, grow
//! BA/AB/GLP/PFP model topologies for comparison, and measure how far apart
//! IPv6-adjacent ASes sit on the IPv4 graph.

pub mod crossnet;
pub mod generators;
pub mod graph;
pub mod ingest;
pub mod metrics;
pub mod phasefit;
pub mod report;
pub mod snapshot;
mod stats;

pub use crossnet::{tunnel_path_lengths, tunnel_series, TunnelDistribution};
pub use generators::{GeneratorParams, Model};
pub use graph::{AsGraph, AsNumber, GraphError};
pub use metrics::{AsplMode, MetricOptions, MetricRow, MetricSeries};
pub use phasefit::{detect_phase_change, Pattern, PhaseFit, PhaseOptions, SeriesPoint};
pub use snapshot::{Family, Snapshot, SnapshotSeries, YearMonth};
