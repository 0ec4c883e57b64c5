//! Brute-force reference implementations over dense adjacency matrices.
//! Deliberately naive: O(n^3) and simple enough to check by eye.

#![allow(dead_code)]

use std::collections::BTreeMap;

#[derive(Debug, Clone)]
pub struct Dense {
    pub labels: Vec<u32>,
    pub adj: Vec<Vec<bool>>,
}

impl Dense {
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self, label: u32) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }
}

pub fn dense(edges: &[(u32, u32)]) -> Dense {
    let mut labels: Vec<u32> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let n = labels.len();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        let i = labels.binary_search(&u).unwrap();
        let j = labels.binary_search(&v).unwrap();
        adj[i][j] = true;
        adj[j][i] = true;
    }
    Dense { labels, adj }
}

pub fn degrees(d: &Dense) -> Vec<usize> {
    d.adj.iter().map(|row| row.iter().filter(|&&b| b).count()).collect()
}

pub fn edge_count(d: &Dense) -> usize {
    degrees(d).iter().sum::<usize>() / 2
}

pub fn clustering(d: &Dense) -> Option<f64> {
    let n = d.n();
    if n < 3 {
        return None;
    }
    let mut triangles = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if d.adj[i][j] && d.adj[j][k] && d.adj[i][k] {
                    triangles += 1;
                }
            }
        }
    }
    let mut triples = 0u64;
    for centre in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                if d.adj[centre][a] && d.adj[centre][b] {
                    triples += 1;
                }
            }
        }
    }
    (triples > 0).then(|| 3.0 * triangles as f64 / triples as f64)
}

/// Pearson correlation of end degrees over both orientations of every edge.
pub fn assortativity(d: &Dense) -> Option<f64> {
    let deg = degrees(d);
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..d.n() {
        for j in 0..d.n() {
            if d.adj[i][j] {
                xs.push(deg[i] as f64);
                ys.push(deg[j] as f64);
            }
        }
    }
    if xs.is_empty() {
        return None;
    }
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    (vx > 0.0 && vy > 0.0).then(|| cov / (vx * vy).sqrt())
}

/// All-pairs hop distances; `None` for unreachable pairs.
pub fn floyd_warshall(d: &Dense) -> Vec<Vec<Option<u32>>> {
    let n = d.n();
    let mut dist = vec![vec![None; n]; n];
    for i in 0..n {
        dist[i][i] = Some(0);
        for j in 0..n {
            if d.adj[i][j] {
                dist[i][j] = Some(1);
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (dist[i][k], dist[k][j]) {
                    if dist[i][j].is_none_or(|c| a + b < c) {
                        dist[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    dist
}

/// Components as sorted label lists; the giant is the largest, ties going
/// to the one holding the smallest label.
pub fn giant_labels(d: &Dense) -> Vec<u32> {
    let dist = floyd_warshall(d);
    let mut best: Vec<u32> = Vec::new();
    for i in 0..d.n() {
        let comp: Vec<u32> = (0..d.n()).filter(|&j| dist[i][j].is_some()).map(|j| d.labels[j]).collect();
        if comp.len() > best.len() || (comp.len() == best.len() && comp[0] < best[0]) {
            best = comp;
        }
    }
    best
}

pub fn restrict(d: &Dense, keep: &[u32]) -> Dense {
    let idx: Vec<usize> = keep.iter().map(|&l| d.index(l).unwrap()).collect();
    Dense { labels: keep.to_vec(), adj: idx.iter().map(|&i| idx.iter().map(|&j| d.adj[i][j]).collect()).collect() }
}

/// Mean distance over ordered pairs of the giant component.
pub fn aspl(d: &Dense) -> Option<f64> {
    let g = restrict(d, &giant_labels(d));
    let n = g.n();
    if n < 2 {
        return None;
    }
    let dist = floyd_warshall(&g);
    let mut total = 0u64;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total += dist[i][j].unwrap() as u64;
            }
        }
    }
    Some(total as f64 / (n * (n - 1)) as f64)
}

/// `(k, P(K >= k))` for every distinct degree.
pub fn ccdf(d: &Dense) -> Vec<(usize, f64)> {
    let deg = degrees(d);
    let mut ks = deg.clone();
    ks.sort_unstable();
    ks.dedup();
    ks.into_iter().map(|k| (k, deg.iter().filter(|&&x| x >= k).count() as f64 / deg.len() as f64)).collect()
}

/// Hop-distance histogram of `g6`'s links on `g4`, plus missing and
/// disconnected counts.
pub fn tunnel(g6: &[(u32, u32)], g4: &[(u32, u32)]) -> (BTreeMap<u32, u64>, u64, u64) {
    let d4 = dense(g4);
    let dist = floyd_warshall(&d4);
    let mut links: Vec<(u32, u32)> = g6.iter().filter(|(u, v)| u != v).map(|&(u, v)| (u.min(v), u.max(v))).collect();
    links.sort_unstable();
    links.dedup();
    let (mut counts, mut missing, mut disconnected) = (BTreeMap::new(), 0, 0);
    for (u, v) in links {
        match (d4.index(u), d4.index(v)) {
            (Some(i), Some(j)) => match dist[i][j] {
                Some(h) => *counts.entry(h).or_insert(0) += 1,
                None => disconnected += 1,
            },
            _ => missing += 1,
        }
    }
    (counts, missing, disconnected)
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

/// Hand-derived contents of the `fixtures/corpus` tree.
pub mod corpus {
    use std::path::PathBuf;

    pub fn fixtures() -> PathBuf {
        // resolves from any crate of the workspace
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
    }

    /// Edges of 2004-01 with every monitor: the clean and prepended paths of
    /// oix, rrc00 and lax.
    pub const JAN_ALL: [(u32, u32); 6] =
        [(701, 1239), (1239, 3356), (174, 3356), (701, 7018), (701, 2914), (209, 3356)];
    /// Edges of 2004-01 seen by oix alone.
    pub const JAN_OIX: [(u32, u32); 3] = [(701, 1239), (1239, 3356), (174, 3356)];
    /// Links added in 2004-02 and then 2004-03.
    pub const FEB_NEW: [(u32, u32); 2] = [(2914, 3356), (209, 3549)];
    pub const MAR_NEW: [(u32, u32); 2] = [(2914, 6453), (4637, 6453)];
    /// `(N, L)` per month with every monitor.
    pub const SIZES_ALL: [(usize, usize); 3] = [(7, 6), (8, 8), (10, 10)];

    /// Per-month filter counts with every monitor:
    /// total, accepted, as_set, private_asn, loop, malformed.
    pub fn filter_all(month: usize) -> [u64; 6] {
        let extra = [0, 2, 3][month];
        [13 + extra, 5 + extra, 2, 3, 2, 1]
    }

    /// Same counts for oix alone.
    pub fn filter_oix(month: usize) -> [u64; 6] {
        let extra = [0, 1, 1][month];
        [7 + extra, 3 + extra, 1, 1, 1, 1]
    }
}
