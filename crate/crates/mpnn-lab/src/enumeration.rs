//! Exhaustive censuses of connected graphs and free trees, plus exact
//! counts of connected labeled graphs.
//!
//! Census representatives are canonical-form graphs sorted by canonical
//! code, so class indices are stable across runs and platforms. Generation
//! is brute-force-with-dedupe: graphs come from all edge subsets filtered
//! for connectivity, trees from the rooted-tree catalogue reduced modulo
//! the root. Both dedupe through [`canonical_form`].

use crate::graph::{canonical_form, CanonicalCode, GraphError, LabeledGraph};
use num_bigint::BigUint;
use rayon::prelude::*;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

/// Largest `v` for the connected-graph census (853 classes).
pub const MAX_GRAPH_CENSUS: usize = 7;
/// Largest `v` for the free-tree census (551 classes).
pub const MAX_TREE_CENSUS: usize = 12;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("census for {family} supports v in 1..={max}, got {v}")]
    OutOfRange {
        family: CensusFamily,
        v: usize,
        max: usize,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Which family a census enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum CensusFamily {
    ConnectedGraphs,
    Trees,
}

impl CensusFamily {
    pub fn max_census(self) -> usize {
        match self {
            CensusFamily::ConnectedGraphs => MAX_GRAPH_CENSUS,
            CensusFamily::Trees => MAX_TREE_CENSUS,
        }
    }
}

impl fmt::Display for CensusFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CensusFamily::ConnectedGraphs => write!(f, "graphs"),
            CensusFamily::Trees => write!(f, "trees"),
        }
    }
}

/// One representative per isomorphism class, sorted by canonical code.
#[derive(Debug, Clone)]
pub struct ClassCensus {
    family: CensusFamily,
    v: usize,
    codes: Vec<CanonicalCode>,
    representatives: Vec<LabeledGraph>,
}

impl ClassCensus {
    fn from_codes(family: CensusFamily, v: usize, mut codes: Vec<CanonicalCode>) -> Self {
        codes.sort_unstable();
        codes.dedup();
        let representatives = codes.iter().map(CanonicalCode::to_graph).collect();
        ClassCensus {
            family,
            v,
            codes,
            representatives,
        }
    }

    pub fn family(&self) -> CensusFamily {
        self.family
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn representatives(&self) -> &[LabeledGraph] {
        &self.representatives
    }

    pub fn codes(&self) -> &[CanonicalCode] {
        &self.codes
    }

    /// Index of the class with this canonical code, if present.
    pub fn index_of(&self, code: &CanonicalCode) -> Option<usize> {
        self.codes.binary_search(code).ok()
    }
}

/// All connected graphs on `v` nodes, one per isomorphism class.
///
/// Runs over all `2^(v choose 2)` edge subsets in parallel chunks; the
/// sorted result is identical for any thread count.
pub fn enumerate_connected_graphs(v: usize) -> Result<ClassCensus, EnumerationError> {
    if !(1..=MAX_GRAPH_CENSUS).contains(&v) {
        return Err(EnumerationError::OutOfRange {
            family: CensusFamily::ConnectedGraphs,
            v,
            max: MAX_GRAPH_CENSUS,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..v)
        .flat_map(|i| (i + 1..v).map(move |j| (i, j)))
        .collect();
    let total: u64 = 1 << pairs.len();

    let codes = (0..total)
        .into_par_iter()
        .fold(HashSet::new, |mut set: HashSet<CanonicalCode>, mask| {
            if mask_is_connected(v, &pairs, mask) {
                let edges = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &e)| e);
                let g = LabeledGraph::new(v, edges).expect("pairs are valid edges");
                set.insert(canonical_form(&g).expect("census sizes are canonicalizable"));
            }
            set
        })
        .reduce(HashSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(ClassCensus::from_codes(
        CensusFamily::ConnectedGraphs,
        v,
        codes.into_iter().collect(),
    ))
}

fn mask_is_connected(v: usize, pairs: &[(usize, usize)], mask: u64) -> bool {
    let mut adj = [0u32; MAX_GRAPH_CENSUS];
    for (i, &(a, b)) in pairs.iter().enumerate() {
        if mask >> i & 1 == 1 {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
    }
    let mut seen = 1u32;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        let mut fresh = adj[x] & !seen;
        while fresh != 0 {
            let i = fresh.trailing_zeros() as usize;
            fresh &= fresh - 1;
            seen |= 1 << i;
            frontier.push(i);
        }
    }
    seen == (1u32 << v) - 1
}

/// All free trees on `v` nodes, one per isomorphism class.
pub fn enumerate_trees(v: usize) -> Result<ClassCensus, EnumerationError> {
    if !(1..=MAX_TREE_CENSUS).contains(&v) {
        return Err(EnumerationError::OutOfRange {
            family: CensusFamily::Trees,
            v,
            max: MAX_TREE_CENSUS,
        });
    }
    let catalogue = RootedCatalogue::up_to(v);
    let mut codes = HashSet::new();
    for idx in 0..catalogue.count(v) {
        let g = catalogue.materialize(v, idx);
        codes.insert(canonical_form(&g).expect("trees fit the canonical limit"));
    }
    Ok(ClassCensus::from_codes(
        CensusFamily::Trees,
        v,
        codes.into_iter().collect(),
    ))
}

/// All rooted trees on up to `max` nodes, one entry per rooted
/// isomorphism class. A tree is a multiset of child subtrees; multisets
/// are enumerated in non-increasing `(size, index)` order so each class
/// appears exactly once.
struct RootedCatalogue {
    /// `by_size[k][i]` lists the children of tree `i` on `k` nodes as
    /// `(child_size, child_index)` pairs.
    by_size: Vec<Vec<Vec<(usize, usize)>>>,
}

impl RootedCatalogue {
    fn up_to(max: usize) -> Self {
        let mut by_size: Vec<Vec<Vec<(usize, usize)>>> = vec![Vec::new(); max + 1];
        if max >= 1 {
            by_size[1] = vec![Vec::new()];
        }
        for k in 2..=max {
            let mut out = Vec::new();
            let mut current = Vec::new();
            // Largest child first; the bound caps later children.
            extend_children(&by_size, k - 1, (k - 1, usize::MAX), &mut current, &mut out);
            by_size[k] = out;
        }
        RootedCatalogue { by_size }
    }

    fn count(&self, size: usize) -> usize {
        self.by_size[size].len()
    }

    /// Builds the tree as a labeled graph; node 0 is the root and ids
    /// follow a preorder walk.
    fn materialize(&self, size: usize, index: usize) -> LabeledGraph {
        let mut edges = Vec::with_capacity(size - 1);
        let mut next_id = 1;
        self.walk(size, index, 0, &mut next_id, &mut edges);
        LabeledGraph::new(size, edges).expect("catalogue trees are valid")
    }

    fn walk(
        &self,
        size: usize,
        index: usize,
        node: usize,
        next_id: &mut usize,
        edges: &mut Vec<(usize, usize)>,
    ) {
        for &(child_size, child_index) in &self.by_size[size][index] {
            let child_node = *next_id;
            *next_id += 1;
            edges.push((node, child_node));
            self.walk(child_size, child_index, child_node, next_id, edges);
        }
    }
}

fn extend_children(
    by_size: &[Vec<Vec<(usize, usize)>>],
    remaining: usize,
    bound: (usize, usize),
    current: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if remaining == 0 {
        out.push(current.clone());
        return;
    }
    for size in (1..=remaining.min(bound.0)).rev() {
        let index_cap = if size == bound.0 {
            bound.1.min(by_size[size].len() - 1)
        } else {
            by_size[size].len() - 1
        };
        for index in (0..=index_cap).rev() {
            current.push((size, index));
            extend_children(by_size, remaining - size, (size, index), current, out);
            current.pop();
        }
    }
}

/// Exact number of connected labeled graphs on `v` nodes, by the
/// subtraction recurrence
/// `C_v = 2^(v choose 2) - sum_k C(v-1, k-1) * C_k * 2^((v-k) choose 2)`.
pub fn count_connected_labeled(v: usize) -> BigUint {
    assert!(v >= 1, "node count must be positive");
    let mut counts: Vec<BigUint> = vec![BigUint::from(1u32)];
    for n in 2..=v {
        let mut total = BigUint::from(1u32) << (n * (n - 1) / 2);
        for k in 1..n {
            let rest = n - k;
            let term = binomial(n - 1, k - 1) * &counts[k - 1]
                * (BigUint::from(1u32) << (rest * (rest - 1) / 2));
            total -= term;
        }
        counts.push(total);
    }
    counts[v - 1].clone()
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut result = BigUint::from(1u32);
    for i in 0..k.min(n - k) {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_graph_censuses() {
        assert_eq!(enumerate_connected_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_connected_graphs(2).unwrap().len(), 1);
        // Path and triangle.
        assert_eq!(enumerate_connected_graphs(3).unwrap().len(), 2);
        assert_eq!(enumerate_connected_graphs(4).unwrap().len(), 6);
    }

    #[test]
    fn tiny_tree_censuses() {
        assert_eq!(enumerate_trees(1).unwrap().len(), 1);
        assert_eq!(enumerate_trees(3).unwrap().len(), 1);
        // Path and star.
        assert_eq!(enumerate_trees(4).unwrap().len(), 2);
        assert_eq!(enumerate_trees(7).unwrap().len(), 11);
    }

    #[test]
    fn census_entries_are_connected_and_sorted() {
        let census = enumerate_connected_graphs(5).unwrap();
        assert_eq!(census.len(), 21);
        assert!(census.representatives().iter().all(LabeledGraph::is_connected));
        let codes = census.codes();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        for (i, code) in codes.iter().enumerate() {
            assert_eq!(census.index_of(code), Some(i));
        }
    }

    #[test]
    fn trees_have_tree_edge_counts() {
        for v in 2..=9 {
            let census = enumerate_trees(v).unwrap();
            assert!(census
                .representatives()
                .iter()
                .all(|t| t.edge_count() == v - 1 && t.is_connected()));
        }
    }

    #[test]
    fn range_checks() {
        assert!(matches!(
            enumerate_connected_graphs(0),
            Err(EnumerationError::OutOfRange { .. })
        ));
        assert!(matches!(
            enumerate_connected_graphs(8),
            Err(EnumerationError::OutOfRange { .. })
        ));
        assert!(matches!(
            enumerate_trees(13),
            Err(EnumerationError::OutOfRange { .. })
        ));
    }

    #[test]
    fn rooted_catalogue_counts() {
        // Rooted trees on 1..=8 nodes.
        let cat = RootedCatalogue::up_to(8);
        let counts: Vec<usize> = (1..=8).map(|k| cat.count(k)).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 9, 20, 48, 115]);
    }

    #[test]
    fn connected_labeled_counts() {
        let expect: [(usize, u64); 6] = [(1, 1), (2, 1), (3, 4), (4, 38), (5, 728), (6, 26704)];
        for (v, c) in expect {
            assert_eq!(count_connected_labeled(v), BigUint::from(c));
        }
        // Above u64 territory.
        assert_eq!(
            count_connected_labeled(12).to_string(),
            "73354596206766622208"
        );
    }
}
