//! IPv6-over-IPv4 tunnelling proxy: for every IPv6 link, how many hops
//! apart its endpoints are on the IPv4 graph of the same month.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{AsGraph, AsNumber, Bfs, UNREACHED};
use crate::snapshot::{SnapshotSeries, YearMonth};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossnetError {
    #[error("IPv6 graph has no edges")]
    NoEdges,
    #[error("IPv4 graph has no nodes")]
    EmptyIpv4,
    #[error("series do not share any month (IPv6 covers {ipv6}, IPv4 covers {ipv4})")]
    NoOverlap { ipv6: String, ipv4: String },
    #[error("{date}: {source}")]
    AtDate {
        date: YearMonth,
        #[source]
        source: Box<CrossnetError>,
    },
}

/// IPv4 hop-distance histogram of the links of one IPv6 snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TunnelDistribution {
    pub date: Option<YearMonth>,
    /// distance `d >= 1` -> number of IPv6 links whose endpoints are `d`
    /// hops apart on IPv4
    pub counts: BTreeMap<u32, u64>,
    /// IPv6 links with at least one endpoint absent from IPv4
    pub missing: u64,
    /// IPv6 links whose endpoints are both on IPv4 but not connected there
    pub disconnected: u64,
    /// mean distance over the counted links; `None` if nothing was counted
    pub aspl: Option<f64>,
}

impl TunnelDistribution {
    pub fn counted(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn total_links(&self) -> u64 {
        self.counted() + self.missing + self.disconnected
    }

    /// Share of counted links at distance `d`.
    pub fn probability(&self, d: u32) -> f64 {
        let c = self.counted();
        if c == 0 {
            return 0.0;
        }
        self.counts.get(&d).copied().unwrap_or(0) as f64 / c as f64
    }
}

/// Measures every link of `g6` on `g4`. BFS runs only from the distinct
/// IPv6 endpoints that exist in `g4`.
pub fn tunnel_path_lengths(g6: &AsGraph, g4: &AsGraph) -> Result<TunnelDistribution, CrossnetError> {
    let links = g6.edges();
    if links.is_empty() {
        return Err(CrossnetError::NoEdges);
    }
    if g4.is_empty() {
        return Err(CrossnetError::EmptyIpv4);
    }
    let mut missing = 0u64;
    let mut partners: BTreeMap<AsNumber, Vec<AsNumber>> = BTreeMap::new();
    for &(u, v) in &links {
        if g4.contains_node(u) && g4.contains_node(v) {
            partners.entry(u).or_default().push(v);
        } else {
            missing += 1;
        }
    }
    let work: Vec<(AsNumber, Vec<AsNumber>)> = partners.into_iter().collect();
    let distances: Vec<Vec<u32>> = work
        .par_iter()
        .map_init(
            || Bfs::new(g4.node_count()),
            |bfs, (src, targets)| {
                let s = g4.dense_index(*src).expect("endpoint present");
                bfs.run(g4, s);
                targets.iter().map(|t| bfs.dist[g4.dense_index(*t).expect("endpoint present")]).collect()
            },
        )
        .collect();

    let mut counts = BTreeMap::new();
    let mut disconnected = 0u64;
    let (mut sum, mut n) = (0u64, 0u64);
    for d in distances.into_iter().flatten() {
        if d == UNREACHED {
            disconnected += 1;
        } else {
            *counts.entry(d).or_insert(0u64) += 1;
            sum += d as u64;
            n += 1;
        }
    }
    let aspl = (n > 0).then(|| sum as f64 / n as f64);
    Ok(TunnelDistribution { date: None, counts, missing, disconnected, aspl })
}

fn date_range(s: &SnapshotSeries) -> String {
    match (s.snapshots().first(), s.snapshots().last()) {
        (Some(a), Some(b)) => format!("{}..{}", a.date, b.date),
        _ => "nothing".into(),
    }
}

/// One distribution per month present in both series, ascending.
pub fn tunnel_series(
    series6: &SnapshotSeries,
    series4: &SnapshotSeries,
) -> Result<Vec<TunnelDistribution>, CrossnetError> {
    let v4: HashMap<YearMonth, &AsGraph> = series4.snapshots().iter().map(|s| (s.date, &s.graph)).collect();
    let joined: Vec<_> =
        series6.snapshots().iter().filter_map(|s| v4.get(&s.date).map(|g4| (s.date, &s.graph, *g4))).collect();
    if joined.is_empty() {
        return Err(CrossnetError::NoOverlap { ipv6: date_range(series6), ipv4: date_range(series4) });
    }
    joined
        .into_iter()
        .map(|(date, g6, g4)| {
            tunnel_path_lengths(g6, g4)
                .map(|d| TunnelDistribution { date: Some(date), ..d })
                .map_err(|e| CrossnetError::AtDate { date, source: Box::new(e) })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(edges: &[(u32, u32)]) -> AsGraph {
        AsGraph::from_edges(edges.iter().copied())
    }

    #[test]
    fn native_links_only() {
        let g4 = g(&[(1, 2), (2, 3), (3, 4)]);
        let d = tunnel_path_lengths(&g(&[(1, 2), (3, 4)]), &g4).unwrap();
        assert_eq!(d.counts, BTreeMap::from([(1, 2)]));
        assert_eq!(d.aspl, Some(1.0));
        assert_eq!(d.probability(1), 1.0);
    }

    #[test]
    fn single_tunnel() {
        let d = tunnel_path_lengths(&g(&[(1, 3)]), &g(&[(1, 2), (2, 3)])).unwrap();
        assert_eq!(d.counts, BTreeMap::from([(2, 1)]));
        assert_eq!(d.aspl, Some(2.0));
    }

    #[test]
    fn three_node_fixture() {
        let d = tunnel_path_lengths(&g(&[(1, 3), (1, 2)]), &g(&[(1, 2), (2, 3)])).unwrap();
        assert_eq!(d.counts, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(d.aspl, Some(1.5));
        assert_eq!((d.probability(1), d.probability(2)), (0.5, 0.5));
    }

    #[test]
    fn missing_and_disconnected() {
        let g4 = g(&[(1, 2), (3, 4)]);
        let g6 = g(&[(1, 2), (1, 3), (1, 99)]);
        let d = tunnel_path_lengths(&g6, &g4).unwrap();
        assert_eq!((d.counted(), d.missing, d.disconnected), (1, 1, 1));
        assert_eq!(d.total_links(), 3);
        assert_eq!(d.aspl, Some(1.0));

        let d = tunnel_path_lengths(&g(&[(50, 51)]), &g4).unwrap();
        assert_eq!(d.aspl, None);
        assert_eq!(d.missing, 1);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(tunnel_path_lengths(&AsGraph::new(), &g(&[(1, 2)])), Err(CrossnetError::NoEdges));
        assert_eq!(tunnel_path_lengths(&g(&[(1, 2)]), &AsGraph::new()), Err(CrossnetError::EmptyIpv4));
    }
}
