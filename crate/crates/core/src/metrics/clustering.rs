use super::MetricError;
use crate::graph::AsGraph;

/// Triangle count and connected-triple count of `g`.
///
/// Triangles are counted once each by orienting every edge from the
/// lower-ranked to the higher-ranked endpoint, ranking by (degree, index).
pub fn triangles_and_triples(g: &AsGraph) -> (u64, u64) {
    let n = g.node_count();
    let rank_key = |i: usize| (g.adjacency(i).len(), i);
    let forward: Vec<Vec<u32>> = (0..n)
        .map(|i| g.adjacency(i).iter().copied().filter(|&j| rank_key(j as usize) > rank_key(i)).collect())
        .collect();
    let mut mark = vec![false; n];
    let mut triangles = 0u64;
    for u in 0..n {
        for &v in &forward[u] {
            mark[v as usize] = true;
        }
        for &v in &forward[u] {
            for &w in &forward[v as usize] {
                if mark[w as usize] {
                    triangles += 1;
                }
            }
        }
        for &v in &forward[u] {
            mark[v as usize] = false;
        }
    }
    let triples = g
        .degrees()
        .map(|d| {
            let d = d as u64;
            d * d.saturating_sub(1) / 2
        })
        .sum();
    (triangles, triples)
}

/// Global clustering coefficient: three times the triangle count over the
/// number of connected triples.
pub fn clustering_coefficient(g: &AsGraph) -> Result<f64, MetricError> {
    if g.node_count() < 3 {
        return Err(MetricError::Degenerate("clustering coefficient needs at least three nodes"));
    }
    let (triangles, triples) = triangles_and_triples(g);
    if triples == 0 {
        return Err(MetricError::Undefined("clustering coefficient: no connected triples"));
    }
    Ok(3.0 * triangles as f64 / triples as f64)
}
