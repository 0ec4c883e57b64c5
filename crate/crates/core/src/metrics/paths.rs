//! Average shortest path length.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::MetricError;
use crate::graph::{AsGraph, Bfs};

/// Default number of BFS sources in sampled mode.
pub const DEFAULT_SAMPLED_SOURCES: usize = 1000;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AsplMode {
    #[default]
    /// BFS from every node of the giant component.
    Exact,
    /// BFS from `n_sources` distinct sources drawn with `seed`; clamped to
    /// the component size.
    Sampled { n_sources: usize, seed: u64 },
}

impl fmt::Display for AsplMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsplMode::Exact => f.write_str("exact"),
            AsplMode::Sampled { n_sources, .. } => write!(f, "sampled:{n_sources}"),
        }
    }
}

impl AsplMode {
    /// Parses `exact` or `sampled:N` (`sampled` alone means
    /// [`DEFAULT_SAMPLED_SOURCES`]).
    pub fn parse(s: &str, seed: u64) -> Result<Self, String> {
        match s {
            "exact" => Ok(AsplMode::Exact),
            "sampled" => Ok(AsplMode::Sampled { n_sources: DEFAULT_SAMPLED_SOURCES, seed }),
            _ => {
                let n = s
                    .strip_prefix("sampled:")
                    .and_then(|n| usize::from_str(n).ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| format!("invalid ASPL mode {s:?}, expected exact or sampled:N"))?;
                Ok(AsplMode::Sampled { n_sources: n, seed })
            }
        }
    }
}

/// Mean hop distance over the giant component of `g`.
///
/// Exact mode averages over all unordered node pairs. Sampled mode averages
/// the BFS trees of the drawn sources; with as many sources as nodes it is
/// identical to exact mode.
pub fn average_shortest_path_length(g: &AsGraph, mode: AsplMode) -> Result<f64, MetricError> {
    if g.node_count() < 2 {
        return Err(MetricError::Degenerate("average shortest path length needs at least two nodes"));
    }
    let giant = g.giant_component().map_err(|_| MetricError::EmptyGraph)?;
    let n = giant.node_count();
    if n < 2 {
        return Err(MetricError::Degenerate("giant component has a single node"));
    }
    let sources = match mode {
        AsplMode::Exact => (0..n).collect::<Vec<_>>(),
        AsplMode::Sampled { n_sources, seed } => sample_sources(&giant, n_sources, seed),
    };
    let total = distance_sum(&giant, &sources);
    Ok(total as f64 / (sources.len() as f64 * (n - 1) as f64))
}

/// Distinct dense source indices, drawn from the nodes in ascending AS
/// order so the choice does not depend on insertion order.
fn sample_sources(g: &AsGraph, n_sources: usize, seed: u64) -> Vec<usize> {
    let n = g.node_count();
    let k = n_sources.clamp(1, n);
    let sorted = g.nodes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picks: Vec<usize> = rand::seq::index::sample(&mut rng, n, k).into_vec();
    picks.sort_unstable();
    picks.into_iter().map(|i| g.dense_index(sorted[i]).expect("node of g")).collect()
}

/// Sum of BFS distances from each source to every reachable node. Integer
/// accumulation keeps the result independent of worker scheduling.
fn distance_sum(g: &AsGraph, sources: &[usize]) -> u64 {
    sources
        .par_iter()
        .map_init(
            || Bfs::new(g.node_count()),
            |bfs, &s| {
                bfs.run(g, s);
                bfs.distance_sum()
            },
        )
        .sum()
}
