//! Per-snapshot topology metrics and their assembly into time series.
//!
//! Node and edge counts, maximum degree and average degree describe the
//! whole snapshot. Path length, clustering, assortativity and the power-law
//! exponent are computed on the giant component. Undefined values (for
//! example assortativity of a regular graph) are errors at the operation
//! level and absent cells at the row level.

mod assortativity;
mod clustering;
mod degree;
mod paths;

pub use assortativity::assortativity_coefficient;
pub use clustering::{clustering_coefficient, triangles_and_triples};
pub use degree::{average_degree, degree_ccdf, max_degree, powerlaw_exponent, CcdfPoint};
pub use paths::{average_shortest_path_length, AsplMode, DEFAULT_SAMPLED_SOURCES};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::snapshot::{Family, Snapshot, SnapshotSeries, YearMonth};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricError {
    #[error("graph has no nodes")]
    EmptyGraph,
    #[error("degenerate graph: {0}")]
    Degenerate(&'static str),
    #[error("undefined metric: {0}")]
    Undefined(&'static str),
    #[error("insufficient data: need at least {needed} points, found {found}")]
    InsufficientData { needed: usize, found: usize },
    #[error("snapshot {date}: {source}")]
    AtSnapshot {
        date: YearMonth,
        #[source]
        source: Box<MetricError>,
    },
}

/// Metric values of one snapshot. Column names follow the CSV header
/// `date,N,L,k_max,k_avg,aspl,C,rho,r`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricRow {
    pub date: YearMonth,
    #[serde(rename = "N")]
    pub nodes: usize,
    #[serde(rename = "L")]
    pub edges: usize,
    pub k_max: usize,
    pub k_avg: f64,
    pub aspl: Option<f64>,
    #[serde(rename = "C")]
    pub clustering: Option<f64>,
    pub rho: Option<f64>,
    pub r: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSeries {
    pub family: Family,
    pub monitor_set: String,
    pub rows: Vec<MetricRow>,
}

/// Options shared by [`metric_row`] and [`metrics_series`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricOptions {
    pub aspl: AsplMode,
    pub k_min: usize,
}

impl Default for MetricOptions {
    fn default() -> Self {
        MetricOptions { aspl: AsplMode::Exact, k_min: 1 }
    }
}

/// A metric left empty in an otherwise valid row.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricIssue {
    pub column: &'static str,
    pub error: MetricError,
}

pub fn metric_row(s: &Snapshot, opts: &MetricOptions) -> Result<MetricRow, MetricError> {
    metric_row_diagnosed(s, opts).map(|(row, _)| row)
}

/// Like [`metric_row`], also reporting why each empty cell is empty.
pub fn metric_row_diagnosed(s: &Snapshot, opts: &MetricOptions) -> Result<(MetricRow, Vec<MetricIssue>), MetricError> {
    let g = &s.graph;
    let k_max = max_degree(g)?;
    let k_avg = average_degree(g)?;
    let giant = g.giant_component().map_err(|_| MetricError::EmptyGraph)?;
    let mut issues = Vec::new();
    let mut keep = |column, r: Result<f64, MetricError>| match r {
        Ok(v) => Some(v),
        Err(error) => {
            issues.push(MetricIssue { column, error });
            None
        }
    };
    let aspl = keep("aspl", average_shortest_path_length(&giant, opts.aspl));
    let clustering = keep("C", clustering_coefficient(&giant));
    let rho = keep("rho", assortativity_coefficient(&giant));
    let r = keep("r", degree_ccdf(&giant).and_then(|c| powerlaw_exponent(&c, opts.k_min)));
    let row = MetricRow {
        date: s.date,
        nodes: g.node_count(),
        edges: g.edge_count(),
        k_max,
        k_avg,
        aspl,
        clustering,
        rho,
        r,
    };
    Ok((row, issues))
}

/// One row per snapshot, in series order. Snapshots are evaluated in
/// parallel; the first failing snapshot (by date) is reported.
pub fn metrics_series(series: &SnapshotSeries, opts: &MetricOptions) -> Result<MetricSeries, MetricError> {
    if series.is_empty() {
        return Err(MetricError::InsufficientData { needed: 1, found: 0 });
    }
    let rows = series
        .snapshots()
        .par_iter()
        .map(|s| metric_row(s, opts).map_err(|e| MetricError::AtSnapshot { date: s.date, source: Box::new(e) }))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MetricSeries { family: series.family(), monitor_set: series.monitor_set().to_string(), rows })
}

/// Outcome of one month in [`metrics_series_diagnosed`].
pub type DiagnosedRow = (YearMonth, Result<(MetricRow, Vec<MetricIssue>), MetricError>);

/// Evaluates every snapshot in parallel without stopping at failures.
pub fn metrics_series_diagnosed(series: &SnapshotSeries, opts: &MetricOptions) -> Vec<DiagnosedRow> {
    series.snapshots().par_iter().map(|s| (s.date, metric_row_diagnosed(s, opts))).collect()
}
