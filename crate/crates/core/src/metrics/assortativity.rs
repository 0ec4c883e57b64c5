use super::MetricError;
use crate::graph::AsGraph;

/// Degree assortativity: the Pearson correlation of the degrees at the two
/// ends of every edge, each edge counted in both orientations.
///
/// All sums are accumulated as integers, so the zero-variance check is exact
/// and the only rounding happens in the final division.
pub fn assortativity_coefficient(g: &AsGraph) -> Result<f64, MetricError> {
    let m = g.edge_count() as i128;
    if m == 0 {
        return Err(MetricError::Undefined("assortativity: graph has no edges"));
    }
    // over oriented ends: s1 = sum(j + k), s2 = sum(j^2 + k^2), sjk = sum(2jk)
    let (mut s1, mut s2, mut sjk) = (0i128, 0i128, 0i128);
    for i in 0..g.node_count() {
        let j = g.adjacency(i).len() as i128;
        for &nb in g.adjacency(i) {
            if (nb as usize) < i {
                continue;
            }
            let k = g.adjacency(nb as usize).len() as i128;
            s1 += j + k;
            s2 += j * j + k * k;
            sjk += 2 * j * k;
        }
    }
    let ends = 2 * m;
    let num = ends * sjk - s1 * s1;
    let den = ends * s2 - s1 * s1;
    if den == 0 {
        return Err(MetricError::Undefined("assortativity: edge-end degrees have zero variance"));
    }
    Ok(num as f64 / den as f64)
}
