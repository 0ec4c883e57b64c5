//! Undirected simple graph keyed by AS number, plus the traversal
//! primitives the analysis modules share.
//!
//! Nodes are addressed by their raw [`AsNumber`]. Internally every node gets a
//! dense index in insertion order so BFS and the metric kernels can work on
//! plain slices; the dense layer never leaks through the public API.

mod edgelist;

pub use edgelist::{read_edge_list, write_edge_list, EdgeListError};

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::num::ParseIntError;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Autonomous system number (full 32-bit range).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AsNumber(pub u32);

impl AsNumber {
    pub const fn value(self) -> u32 {
        self.0
    }
}

impl From<u32> for AsNumber {
    fn from(v: u32) -> Self {
        AsNumber(v)
    }
}

impl fmt::Display for AsNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for AsNumber {
    type Err = ParseIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<u32>().map(AsNumber)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("AS{0} is not a node of the graph")]
    AbsentNode(AsNumber),
    #[error("graph has no nodes")]
    EmptyGraph,
}

/// Undirected simple graph over AS numbers.
///
/// Self-loops are rejected and duplicate edges collapse, so the graph is
/// always simple and the adjacency is always symmetric.
#[derive(Debug, Clone, Default)]
pub struct AsGraph {
    index: HashMap<AsNumber, u32>,
    labels: Vec<AsNumber>,
    adj: Vec<Vec<u32>>,
    edge_keys: HashSet<u64>,
}

#[inline]
fn edge_key(a: u32, b: u32) -> u64 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    ((lo as u64) << 32) | hi as u64
}

impl AsGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge iterator, applying [`AsGraph::add_edge`]
    /// to each pair.
    pub fn from_edges<I, A>(edges: I) -> Self
    where
        I: IntoIterator<Item = (A, A)>,
        A: Into<AsNumber>,
    {
        let mut g = Self::new();
        for (u, v) in edges {
            g.add_edge(u.into(), v.into());
        }
        g
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn contains_node(&self, u: AsNumber) -> bool {
        self.index.contains_key(&u)
    }

    pub fn has_edge(&self, u: AsNumber, v: AsNumber) -> bool {
        match (self.index.get(&u), self.index.get(&v)) {
            (Some(&a), Some(&b)) => self.edge_keys.contains(&edge_key(a, b)),
            _ => false,
        }
    }

    fn intern(&mut self, u: AsNumber) -> u32 {
        if let Some(&i) = self.index.get(&u) {
            return i;
        }
        let i = self.labels.len() as u32;
        self.index.insert(u, i);
        self.labels.push(u);
        self.adj.push(Vec::new());
        i
    }

    /// Inserts the undirected edge `{u, v}`.
    ///
    /// Returns `true` only when the edge was not present before. A self-loop
    /// leaves the graph untouched and returns `false`.
    pub fn add_edge(&mut self, u: AsNumber, v: AsNumber) -> bool {
        if u == v {
            return false;
        }
        if self.has_edge(u, v) {
            return false;
        }
        let a = self.intern(u);
        let b = self.intern(v);
        self.edge_keys.insert(edge_key(a, b));
        self.adj[a as usize].push(b);
        self.adj[b as usize].push(a);
        true
    }

    pub fn degree(&self, u: AsNumber) -> Result<usize, GraphError> {
        self.index.get(&u).map(|&i| self.adj[i as usize].len()).ok_or(GraphError::AbsentNode(u))
    }

    pub fn neighbors(&self, u: AsNumber) -> Result<impl Iterator<Item = AsNumber> + '_, GraphError> {
        let i = *self.index.get(&u).ok_or(GraphError::AbsentNode(u))?;
        Ok(self.adj[i as usize].iter().map(move |&j| self.labels[j as usize]))
    }

    /// Nodes in ascending AS-number order.
    pub fn nodes(&self) -> Vec<AsNumber> {
        let mut v = self.labels.clone();
        v.sort_unstable();
        v
    }

    /// Edges as `(low, high)` pairs in ascending order.
    pub fn edges(&self) -> Vec<(AsNumber, AsNumber)> {
        let mut out: Vec<(AsNumber, AsNumber)> = Vec::with_capacity(self.edge_count());
        for (i, nbrs) in self.adj.iter().enumerate() {
            let u = self.labels[i];
            for &j in nbrs {
                let v = self.labels[j as usize];
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.iter().map(Vec::len)
    }

    /// Hop distances from `src` to every node reachable from it.
    pub fn bfs_distances(&self, src: AsNumber) -> Result<BTreeMap<AsNumber, u32>, GraphError> {
        let s = self.dense_index(src).ok_or(GraphError::AbsentNode(src))?;
        let mut bfs = Bfs::new(self.node_count());
        bfs.run(self, s);
        Ok(bfs.visited().iter().map(|&i| (self.labels[i as usize], bfs.dist[i as usize])).collect())
    }

    /// Connected components, each sorted ascending, ordered by their
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<AsNumber>> {
        let n = self.node_count();
        let mut comp = vec![u32::MAX; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != u32::MAX {
                continue;
            }
            let id = out.len() as u32;
            comp[start] = id;
            queue.push_back(start as u32);
            let mut members = Vec::new();
            while let Some(u) = queue.pop_front() {
                members.push(self.labels[u as usize]);
                for &v in &self.adj[u as usize] {
                    if comp[v as usize] == u32::MAX {
                        comp[v as usize] = id;
                        queue.push_back(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out.sort_unstable_by_key(|c| c[0]);
        out
    }

    /// Largest connected component as an induced subgraph. Components of
    /// equal size are ranked by their smallest AS number.
    pub fn giant_component(&self) -> Result<AsGraph, GraphError> {
        if self.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let comps = self.connected_components();
        if comps.len() == 1 {
            return Ok(self.clone());
        }
        // components are ordered by minimum member, so the first maximum wins ties
        let mut best = &comps[0];
        for c in &comps[1..] {
            if c.len() > best.len() {
                best = c;
            }
        }
        Ok(self.induced_subgraph(best))
    }

    /// Subgraph induced by `nodes`; unknown AS numbers are ignored.
    pub fn induced_subgraph(&self, nodes: &[AsNumber]) -> AsGraph {
        let keep: HashSet<u32> = nodes.iter().filter_map(|u| self.dense_index(*u)).map(|i| i as u32).collect();
        let mut sorted: Vec<u32> = keep.iter().copied().collect();
        sorted.sort_unstable_by_key(|&i| self.labels[i as usize]);
        let mut g = AsGraph::new();
        for &i in &sorted {
            g.intern(self.labels[i as usize]);
        }
        for &i in &sorted {
            for &j in &self.adj[i as usize] {
                if keep.contains(&j) {
                    g.add_edge(self.labels[i as usize], self.labels[j as usize]);
                }
            }
        }
        g
    }

    /// Sum of degrees equals twice the edge count and every adjacency is
    /// mirrored. Used by tests and debug assertions.
    pub fn check_invariants(&self) -> bool {
        let deg_sum: usize = self.degrees().sum();
        if deg_sum != 2 * self.edge_count() {
            return false;
        }
        for (i, nbrs) in self.adj.iter().enumerate() {
            let mut seen = HashSet::new();
            for &j in nbrs {
                if j as usize == i || !seen.insert(j) || !self.adj[j as usize].contains(&(i as u32)) {
                    return false;
                }
            }
        }
        true
    }

    // dense-index layer used inside the crate

    pub(crate) fn dense_index(&self, u: AsNumber) -> Option<usize> {
        self.index.get(&u).map(|&i| i as usize)
    }

    pub(crate) fn adjacency(&self, i: usize) -> &[u32] {
        &self.adj[i]
    }
}

impl PartialEq for AsGraph {
    /// Two graphs are equal when they have the same node and edge sets,
    /// regardless of insertion order.
    fn eq(&self, other: &Self) -> bool {
        self.node_count() == other.node_count()
            && self.edge_count() == other.edge_count()
            && self.labels.iter().all(|u| other.contains_node(*u))
            && self.edges().into_iter().all(|(u, v)| other.has_edge(u, v))
    }
}

impl Eq for AsGraph {}

/// Reusable BFS state over the dense index of one graph.
pub(crate) struct Bfs {
    pub(crate) dist: Vec<u32>,
    order: Vec<u32>,
}

pub(crate) const UNREACHED: u32 = u32::MAX;

impl Bfs {
    pub(crate) fn new(n: usize) -> Self {
        Bfs { dist: vec![UNREACHED; n], order: Vec::with_capacity(n) }
    }

    /// Runs a full BFS from dense index `src`, resetting the previous run.
    pub(crate) fn run(&mut self, g: &AsGraph, src: usize) {
        for &i in &self.order {
            self.dist[i as usize] = UNREACHED;
        }
        self.order.clear();
        self.dist[src] = 0;
        self.order.push(src as u32);
        let mut head = 0;
        while head < self.order.len() {
            let u = self.order[head] as usize;
            head += 1;
            let du = self.dist[u];
            for &v in g.adjacency(u) {
                if self.dist[v as usize] == UNREACHED {
                    self.dist[v as usize] = du + 1;
                    self.order.push(v);
                }
            }
        }
    }

    /// Nodes reached by the last run, in BFS order.
    pub(crate) fn visited(&self) -> &[u32] {
        &self.order
    }

    /// Sum of hop distances to every reached node.
    pub(crate) fn distance_sum(&self) -> u64 {
        self.order.iter().map(|&i| self.dist[i as usize] as u64).sum()
    }
}
