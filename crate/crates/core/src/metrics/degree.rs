use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MetricError;
use crate::graph::AsGraph;
use crate::stats::least_squares;

pub fn max_degree(g: &AsGraph) -> Result<usize, MetricError> {
    g.degrees().max().ok_or(MetricError::EmptyGraph)
}

/// `2L / N`.
pub fn average_degree(g: &AsGraph) -> Result<f64, MetricError> {
    if g.is_empty() {
        return Err(MetricError::EmptyGraph);
    }
    Ok(2.0 * g.edge_count() as f64 / g.node_count() as f64)
}

/// One point of the complementary cumulative degree distribution:
/// the fraction of nodes whose degree is at least `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CcdfPoint {
    pub k: usize,
    pub p: f64,
}

/// CCDF with one point per distinct degree, ascending in `k`.
pub fn degree_ccdf(g: &AsGraph) -> Result<Vec<CcdfPoint>, MetricError> {
    if g.is_empty() {
        return Err(MetricError::EmptyGraph);
    }
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for d in g.degrees() {
        *hist.entry(d).or_default() += 1;
    }
    let n = g.node_count();
    let mut at_least = n;
    let mut out = Vec::with_capacity(hist.len());
    for (&k, &count) in &hist {
        out.push(CcdfPoint { k, p: at_least as f64 / n as f64 });
        at_least -= count;
    }
    Ok(out)
}

/// Fits `P(K >= k) ~ k^-(r-1)` by least squares in log-log space over the
/// points with `k >= k_min` and returns the density exponent `r`.
pub fn powerlaw_exponent(ccdf: &[CcdfPoint], k_min: usize) -> Result<f64, MetricError> {
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        ccdf.iter().filter(|pt| pt.k >= k_min.max(1) && pt.p > 0.0).map(|pt| ((pt.k as f64).ln(), pt.p.ln())).unzip();
    if xs.len() < 3 {
        return Err(MetricError::InsufficientData { needed: 3, found: xs.len() });
    }
    let (slope, _) = least_squares(&xs, &ys).ok_or(MetricError::InsufficientData { needed: 3, found: xs.len() })?;
    Ok(1.0 - slope)
}
