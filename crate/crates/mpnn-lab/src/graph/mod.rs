//! Labeled graphs and the operations the rest of the crate builds on.
//!
//! A [`LabeledGraph`] is an undirected simple graph on nodes `0..n` with an
//! optional row of symbol digits per node. Node count is capped at
//! [`MAX_NODES`] so adjacency fits in machine-word bitmasks.

mod canon;
pub mod text;

pub use canon::{
    automorphism_count, canonical_form, canonical_form_bounded, is_isomorphic, CanonicalCode,
    DEFAULT_CANONICAL_LIMIT,
};

use std::collections::VecDeque;
use thiserror::Error;

/// Hard cap on node count; adjacency rows are `u32` bitmasks.
pub const MAX_NODES: usize = 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("node count must be in 1..={MAX_NODES}, got {0}")]
    InvalidNodeCount(usize),
    #[error("edge ({0}, {1}) out of range for {2} nodes")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("feature table must have {expected} rows, got {got}")]
    FeatureRowCount { expected: usize, got: usize },
    #[error("feature rows must all have the same length")]
    RaggedFeatures,
    #[error("graph has {n} nodes, above the canonicalization limit {limit}")]
    CanonicalLimit { n: usize, limit: usize },
    #[error("node sets must be nonempty and disjoint")]
    BadPartition,
    #[error("node {0} out of range for {1} nodes")]
    NodeOutOfRange(usize, usize),
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
}

/// Whether a cut counts each crossing edge once or twice.
///
/// Message passing that sends along every edge in both directions uses up
/// two units per undirected edge, so capacity arithmetic defaults to
/// [`CutConvention::Bidirectional`] elsewhere in the crate. Plain
/// graph-theoretic cuts use [`CutConvention::Undirected`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CutConvention {
    Undirected,
    #[default]
    Bidirectional,
}

impl CutConvention {
    pub fn scale(self) -> u64 {
        match self {
            CutConvention::Undirected => 1,
            CutConvention::Bidirectional => 2,
        }
    }
}

/// A set of node indices, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct NodeSet(u32);

impl NodeSet {
    pub fn new() -> Self {
        NodeSet(0)
    }

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_NODES);
        if n == 32 {
            NodeSet(u32::MAX)
        } else {
            NodeSet((1u32 << n) - 1)
        }
    }

    pub fn insert(&mut self, node: usize) {
        debug_assert!(node < MAX_NODES);
        self.0 |= 1 << node;
    }

    pub fn contains(self, node: usize) -> bool {
        node < MAX_NODES && self.0 >> node & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn intersects(self, other: NodeSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_NODES).filter(move |&i| self.contains(i))
    }

    pub fn mask(self) -> u32 {
        self.0
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = NodeSet::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl<const K: usize> From<[usize; K]> for NodeSet {
    fn from(items: [usize; K]) -> Self {
        items.into_iter().collect()
    }
}

/// An undirected simple graph on nodes `0..n` with optional per-node
/// feature digits.
///
/// Edges are kept sorted with `u < v`; construction rejects self-loops,
/// duplicates, and out-of-range endpoints. Values are immutable after
/// construction and safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    features: Option<Vec<Vec<u8>>>,
}

impl LabeledGraph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_NODES {
            return Err(GraphError::InvalidNodeCount(n));
        }
        let mut sorted: Vec<(usize, usize)> = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(GraphError::EdgeOutOfRange(a, b, n));
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            sorted.push((a.min(b), a.max(b)));
        }
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(LabeledGraph {
            n,
            edges: sorted,
            features: None,
        })
    }

    /// Attaches one feature row per node; rows must have equal length.
    pub fn with_features(mut self, features: Vec<Vec<u8>>) -> Result<Self, GraphError> {
        if features.len() != self.n {
            return Err(GraphError::FeatureRowCount {
                expected: self.n,
                got: features.len(),
            });
        }
        if let Some(first) = features.first() {
            if features.iter().any(|row| row.len() != first.len()) {
                return Err(GraphError::RaggedFeatures);
            }
        }
        self.features = Some(features);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn features(&self) -> Option<&[Vec<u8>]> {
        self.features.as_deref()
    }

    pub fn strip_features(&self) -> LabeledGraph {
        LabeledGraph {
            n: self.n,
            edges: self.edges.clone(),
            features: None,
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).is_ok()
    }

    /// Adjacency rows as bitmasks; row `i` has bit `j` set iff `i ~ j`.
    pub fn adjacency_masks(&self) -> Vec<u32> {
        let mut adj = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    pub fn degree(&self, u: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == u || b == u)
            .count()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.sort_unstable();
        deg
    }

    /// Relabels node `i` to `perm[i]`; features travel with their node.
    pub fn permuted(&self, perm: &[usize]) -> Result<LabeledGraph, GraphError> {
        if perm.len() != self.n {
            return Err(GraphError::InvalidPermutation(self.n));
        }
        let mut seen = NodeSet::new();
        for &p in perm {
            if p >= self.n || seen.contains(p) {
                return Err(GraphError::InvalidPermutation(self.n));
            }
            seen.insert(p);
        }
        let mut g = LabeledGraph::new(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
        if let Some(feats) = &self.features {
            let mut moved = vec![Vec::new(); self.n];
            for (i, row) in feats.iter().enumerate() {
                moved[perm[i]] = row.clone();
            }
            g = g.with_features(moved)?;
        }
        Ok(g)
    }

    fn reachable_from(&self, start: usize, adj: &[u32]) -> u32 {
        let mut seen = 1u32 << start;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let mut fresh = adj[x] & !seen;
            while fresh != 0 {
                let i = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                seen |= 1 << i;
                queue.push_back(i);
            }
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency_masks();
        self.reachable_from(0, &adj) == NodeSet::full(self.n).mask()
    }

    /// Nodes reachable from `start`.
    pub fn component_of(&self, start: usize) -> NodeSet {
        let adj = self.adjacency_masks();
        NodeSet(self.reachable_from(start, &adj))
    }

    /// BFS distances from `start`; `u32::MAX` marks unreachable nodes.
    pub fn bfs_distances(&self, start: usize) -> Vec<u32> {
        let adj = self.adjacency_masks();
        let mut dist = vec![u32::MAX; self.n];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let mut nb = adj[x];
            while nb != 0 {
                let i = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                if dist[i] == u32::MAX {
                    dist[i] = dist[x] + 1;
                    queue.push_back(i);
                }
            }
        }
        dist
    }

    /// Longest shortest path, or `None` when the graph is disconnected.
    ///
    /// Samplers may transiently produce disconnected graphs, so this is a
    /// sentinel rather than an error.
    pub fn diameter(&self) -> Option<u32> {
        let mut best = 0;
        for start in 0..self.n {
            let dist = self.bfs_distances(start);
            for &d in &dist {
                if d == u32::MAX {
                    return None;
                }
                best = best.max(d);
            }
        }
        Some(best)
    }

    /// The subgraph induced by `nodes`, relabeled to `0..nodes.len()` in
    /// ascending node order. Feature rows travel with their nodes.
    pub fn induced_subgraph(&self, nodes: NodeSet) -> Result<LabeledGraph, GraphError> {
        if nodes.is_empty() || nodes.mask() & !NodeSet::full(self.n).mask() != 0 {
            return Err(GraphError::BadPartition);
        }
        let order: Vec<usize> = nodes.iter().collect();
        let position = |x: usize| order.binary_search(&x).ok();
        let edges = self.edges.iter().filter_map(|&(u, v)| {
            match (position(u), position(v)) {
                (Some(a), Some(b)) => Some((a, b)),
                _ => None,
            }
        });
        let mut g = LabeledGraph::new(order.len(), edges)?;
        if let Some(feats) = &self.features {
            g = g.with_features(order.iter().map(|&i| feats[i].clone()).collect())?;
        }
        Ok(g)
    }

    fn check_partition(&self, a: NodeSet, b: NodeSet) -> Result<(), GraphError> {
        if a.is_empty() || b.is_empty() || a.intersects(b) {
            return Err(GraphError::BadPartition);
        }
        let full = NodeSet::full(self.n);
        if a.mask() & !full.mask() != 0 || b.mask() & !full.mask() != 0 {
            return Err(GraphError::BadPartition);
        }
        Ok(())
    }

    /// Number of edges with one endpoint in `a` and the other in `b`,
    /// doubled under the bidirectional convention.
    pub fn edge_cut(
        &self,
        a: NodeSet,
        b: NodeSet,
        convention: CutConvention,
    ) -> Result<u64, GraphError> {
        self.check_partition(a, b)?;
        let crossing = self
            .edges
            .iter()
            .filter(|&&(u, v)| {
                (a.contains(u) && b.contains(v)) || (b.contains(u) && a.contains(v))
            })
            .count() as u64;
        Ok(crossing * convention.scale())
    }

    /// Minimum number of edges whose removal disconnects `a` from `b`,
    /// scaled by the convention. Computed as a unit-capacity max-flow
    /// between super-terminals.
    pub fn min_separating_cut(
        &self,
        a: NodeSet,
        b: NodeSet,
        convention: CutConvention,
    ) -> Result<u64, GraphError> {
        self.check_partition(a, b)?;
        use crate::capacity::{Capacity, FlowNetwork};
        // Nodes 0..n mirror the graph; n is the source, n+1 the sink.
        let source = self.n;
        let sink = self.n + 1;
        let mut net = FlowNetwork::new(self.n + 2, source, sink);
        for &(u, v) in &self.edges {
            net.add_arc(u, v, Capacity::Finite(1));
            net.add_arc(v, u, Capacity::Finite(1));
        }
        for u in a.iter() {
            net.add_arc(source, u, Capacity::Infinite);
        }
        for v in b.iter() {
            net.add_arc(v, sink, Capacity::Infinite);
        }
        Ok(net.max_flow() * convention.scale())
    }
}
