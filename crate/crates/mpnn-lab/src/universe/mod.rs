//! Two-part glued graph universes.
//!
//! A universe on `n` nodes takes the full census of a family (connected
//! graphs or free trees) on `v = n/2` nodes and forms every graph that
//! consists of two census members joined by a single bridge edge. Classes
//! are unordered pairs of part classes, so a universe with a census of `c`
//! classes has `c*(c+1)/2` classes in total.
//!
//! The bridge is the unique edge whose removal splits the graph into two
//! `v`-node halves, so the class of a generated graph can be recovered from
//! its structure alone: [`Universe::classify`] finds that edge, canonicalizes
//! both halves, and looks them up in the census.

mod dataset;
mod sample;

pub use dataset::{dataset_stats, generate_dataset, read_dataset, write_dataset, DatasetSpec, DatasetStats};
pub use sample::{sample_gnp, sample_tv, CONNECTIVITY_RETRY_BUDGET};

use crate::enumeration::{
    enumerate_connected_graphs, enumerate_trees, CensusFamily, ClassCensus, EnumerationError,
};
use crate::graph::{canonical_form, CutConvention, GraphError, LabeledGraph, NodeSet};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum UniverseError {
    #[error("universe node count must be even, got {0}")]
    OddNodeCount(usize),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("expected a graph on {expected} nodes, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("graph does not decompose into two census halves over one bridge")]
    NotInUniverse,
    #[error("bridge endpoint {0} is not valid for the given parts")]
    BadBridge(usize),
    #[error("decomposition cut {cut} exceeds tau {tau}")]
    CutExceedsTau { cut: u64, tau: u64 },
    #[error("no connected sample within {budget} retries at p = {p}")]
    ConnectivityBudget { budget: u32, p: f64 },
    #[error("edge probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("universe family mismatch: expected {expected}, got {got}")]
    FamilyMismatch {
        expected: CensusFamily,
        got: CensusFamily,
    },
    #[error("split fractions must be nonnegative and sum to 1")]
    BadFractions,
    #[error("dataset line {line}: {message}")]
    Dataset { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Train/validation/test tag. Serialized as 0/1/2 in dataset files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Split {
    Train,
    Valid,
    Test,
}

impl Split {
    pub fn code(self) -> u8 {
        match self {
            Split::Train => 0,
            Split::Valid => 1,
            Split::Test => 2,
        }
    }

    pub fn from_code(code: u8) -> Option<Split> {
        match code {
            0 => Some(Split::Train),
            1 => Some(Split::Valid),
            2 => Some(Split::Test),
            _ => None,
        }
    }
}

impl fmt::Display for Split {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Split::Train => write!(f, "train"),
            Split::Valid => write!(f, "valid"),
            Split::Test => write!(f, "test"),
        }
    }
}

/// A sampled member of a universe: the glued graph with its one-hot
/// identifier features, its class, its split tag, and the seed that
/// produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphInstance {
    pub graph: LabeledGraph,
    pub class_id: u64,
    pub split: Split,
    pub seed: u64,
}

/// Two parts plus bridge edges, with a cap `tau` on the separating cut.
///
/// Part A keeps its labels `0..a.n()`; part B is shifted up by `a.n()`.
/// Bridge endpoints are given in the combined labeling.
#[derive(Debug, Clone)]
pub struct Decomposition {
    part_a: LabeledGraph,
    part_b: LabeledGraph,
    bridge_edges: Vec<(usize, usize)>,
    tau: u64,
}

impl Decomposition {
    pub fn new(
        part_a: LabeledGraph,
        part_b: LabeledGraph,
        bridge_edges: Vec<(usize, usize)>,
        tau: u64,
    ) -> Result<Self, UniverseError> {
        let total = part_a.n() + part_b.n();
        for &(u, v) in &bridge_edges {
            if u >= total {
                return Err(UniverseError::BadBridge(u));
            }
            if v >= total {
                return Err(UniverseError::BadBridge(v));
            }
        }
        let dec = Decomposition {
            part_a,
            part_b,
            bridge_edges,
            tau,
        };
        let cut = dec.bridge_cut();
        if cut > tau {
            return Err(UniverseError::CutExceedsTau { cut, tau });
        }
        Ok(dec)
    }

    pub fn part_a(&self) -> &LabeledGraph {
        &self.part_a
    }

    pub fn part_b(&self) -> &LabeledGraph {
        &self.part_b
    }

    pub fn bridge_edges(&self) -> &[(usize, usize)] {
        &self.bridge_edges
    }

    pub fn tau(&self) -> u64 {
        self.tau
    }

    /// Crossing edges among the bridge edges (undirected count).
    fn bridge_cut(&self) -> u64 {
        let va = self.part_a.n();
        self.bridge_edges
            .iter()
            .filter(|&&(u, v)| (u < va) != (v < va))
            .count() as u64
    }

    /// The combined graph: disjoint union of the parts plus the bridges.
    /// Features are dropped; samplers attach fresh ones to the result.
    pub fn compose(&self) -> Result<LabeledGraph, UniverseError> {
        let va = self.part_a.n();
        let n = va + self.part_b.n();
        let edges = self
            .part_a
            .edges()
            .iter()
            .copied()
            .chain(self.part_b.edges().iter().map(|&(u, v)| (u + va, v + va)))
            .chain(self.bridge_edges.iter().copied());
        Ok(LabeledGraph::new(n, edges)?)
    }
}

/// Joins two graphs with a single bridge edge from `endpoint_a` in the
/// first part to `endpoint_b` in the second, giving a separating cut of
/// exactly one.
pub fn glue(
    g_a: &LabeledGraph,
    g_b: &LabeledGraph,
    endpoint_a: usize,
    endpoint_b: usize,
) -> Result<LabeledGraph, UniverseError> {
    if endpoint_a >= g_a.n() {
        return Err(UniverseError::BadBridge(endpoint_a));
    }
    if endpoint_b >= g_b.n() {
        return Err(UniverseError::BadBridge(endpoint_b));
    }
    let bridge = (endpoint_a, g_a.n() + endpoint_b);
    Decomposition::new(g_a.clone(), g_b.clone(), vec![bridge], 1)?.compose()
}

/// A family census glued into an `n`-node universe.
#[derive(Debug, Clone)]
pub struct Universe {
    family: CensusFamily,
    n: usize,
    census: ClassCensus,
}

impl Universe {
    pub fn build(family: CensusFamily, n: usize) -> Result<Universe, UniverseError> {
        if n == 0 || n % 2 != 0 {
            return Err(UniverseError::OddNodeCount(n));
        }
        let v = n / 2;
        let census = match family {
            CensusFamily::ConnectedGraphs => enumerate_connected_graphs(v)?,
            CensusFamily::Trees => enumerate_trees(v)?,
        };
        Ok(Universe { family, n, census })
    }

    pub fn family(&self) -> CensusFamily {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn part_nodes(&self) -> usize {
        self.n / 2
    }

    pub fn census(&self) -> &ClassCensus {
        &self.census
    }

    /// Number of part classes `c`.
    pub fn part_class_count(&self) -> usize {
        self.census.len()
    }

    /// Number of universe classes, `c*(c+1)/2`.
    pub fn class_count(&self) -> u64 {
        let c = self.census.len() as u64;
        c * (c + 1) / 2
    }

    /// Class id of the unordered part pair `{i, j}`.
    pub fn pair_class_id(&self, i: usize, j: usize) -> u64 {
        let c = self.census.len() as u64;
        let (lo, hi) = (i.min(j) as u64, i.max(j) as u64);
        // Rows before `lo` hold c, c-1, ... entries; their total is
        // lo*c - lo*(lo-1)/2, written here without underflow at lo = 0.
        lo * (2 * c - lo + 1) / 2 + (hi - lo)
    }

    /// Inverse of [`Universe::pair_class_id`].
    pub fn class_id_pair(&self, class_id: u64) -> (usize, usize) {
        let c = self.census.len() as u64;
        let mut remaining = class_id;
        for i in 0..c {
            let row = c - i;
            if remaining < row {
                return (i as usize, (i + remaining) as usize);
            }
            remaining -= row;
        }
        panic!("class id {class_id} out of range for {c} part classes");
    }

    /// Splits a universe member along its unique half/half bridge.
    ///
    /// The bridge is unique: two distinct cut edges would induce two
    /// distinct laminar partitions, and only one partition into equal
    /// halves can exist.
    pub fn decompose(&self, g: &LabeledGraph) -> Result<Decomposition, UniverseError> {
        if g.n() != self.n {
            return Err(UniverseError::WrongSize {
                expected: self.n,
                got: g.n(),
            });
        }
        let bare = g.strip_features();
        if !bare.is_connected() {
            return Err(UniverseError::NotInUniverse);
        }
        let v = self.n / 2;
        for (index, &(u, w)) in bare.edges().iter().enumerate() {
            let without: Vec<(usize, usize)> = bare
                .edges()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != index)
                .map(|(_, &e)| e)
                .collect();
            let cut_graph = LabeledGraph::new(self.n, without)?;
            let side = cut_graph.component_of(u);
            if side.len() == v && !side.contains(w) {
                let complement: NodeSet =
                    (0..self.n).filter(|&i| !side.contains(i)).collect();
                let part_a = bare.induced_subgraph(side)?;
                let part_b = bare.induced_subgraph(complement)?;
                // Re-express the bridge in part-a-first coordinates.
                let a_nodes: Vec<usize> = side.iter().collect();
                let b_nodes: Vec<usize> = complement.iter().collect();
                let map = |x: usize| {
                    a_nodes
                        .binary_search(&x)
                        .map(|i| i)
                        .unwrap_or_else(|_| v + b_nodes.binary_search(&x).unwrap())
                };
                return Decomposition::new(part_a, part_b, vec![(map(u), map(w))], 1);
            }
        }
        Err(UniverseError::NotInUniverse)
    }

    /// Recovers the class id of a universe member (features ignored).
    pub fn classify(&self, g: &LabeledGraph) -> Result<u64, UniverseError> {
        let dec = self.decompose(g)?;
        let code_a = canonical_form(&dec.part_a().strip_features())?;
        let code_b = canonical_form(&dec.part_b().strip_features())?;
        let i = self
            .census
            .index_of(&code_a)
            .ok_or(UniverseError::NotInUniverse)?;
        let j = self
            .census
            .index_of(&code_b)
            .ok_or(UniverseError::NotInUniverse)?;
        Ok(self.pair_class_id(i, j))
    }

    /// Checks the defining cut property of universe members.
    pub fn admits_tau_one(&self, g: &LabeledGraph) -> Result<bool, UniverseError> {
        let v = self.n / 2;
        let a: NodeSet = (0..v).collect();
        let b: NodeSet = (v..self.n).collect();
        Ok(g.min_separating_cut(a, b, CutConvention::Undirected)? <= 1)
    }
}

/// Class count without keeping the universe around.
pub fn class_count(family: CensusFamily, n: usize) -> Result<u64, UniverseError> {
    Ok(Universe::build(family, n)?.class_count())
}
