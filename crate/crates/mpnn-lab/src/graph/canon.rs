//! Canonical forms for labeled graphs.
//!
//! The canonical code of a graph is the lexicographically smallest
//! upper-triangular adjacency bitstring over all relabelings, read column by
//! column: for positions `j = 1..n` the bits `adj(0,j), adj(1,j), ...,
//! adj(j-1,j)`. Two graphs receive equal codes exactly when they are
//! isomorphic, and the code decodes back to its representative graph.
//!
//! The search places one node per position and explores candidate
//! continuations in ascending bit-block order, pruning branches that exceed
//! the best known string. Degree refinement orders tied candidates, and
//! twin nodes (equal neighborhoods, so that swapping them is an
//! automorphism) are expanded only once per block.

use super::{GraphError, LabeledGraph};

/// Default node-count limit for canonicalization.
pub const DEFAULT_CANONICAL_LIMIT: usize = 16;

/// A byte sequence that uniquely identifies an isomorphism class.
///
/// Layout: one length byte holding `n`, then the packed canonical
/// upper-triangular bits (column-major, most significant bit first).
/// The layout is stable; codes may be persisted and compared across runs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn node_count(&self) -> usize {
        self.0[0] as usize
    }

    /// Reconstructs the canonical representative graph.
    pub fn to_graph(&self) -> LabeledGraph {
        let n = self.node_count();
        let mut edges = Vec::new();
        let mut bit_index = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = self.0[1 + bit_index / 8];
                if byte >> (7 - bit_index % 8) & 1 == 1 {
                    edges.push((i, j));
                }
                bit_index += 1;
            }
        }
        LabeledGraph::new(n, edges).expect("canonical codes decode to valid graphs")
    }
}

/// Iterated degree refinement; returns a rank per node, equal ranks for
/// nodes no invariant round could split. Used only to order the search.
fn refinement_ranks(n: usize, adj: &[u32]) -> Vec<u32> {
    let mut colors: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    for _ in 0..n {
        let mut signatures: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for i in 0..n {
            let mut nb: Vec<u32> = (0..n)
                .filter(|&j| adj[i] >> j & 1 == 1)
                .map(|j| colors[j])
                .collect();
            nb.sort_unstable();
            signatures.push((colors[i], nb));
        }
        let mut sorted: Vec<&(u32, Vec<u32>)> = signatures.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|s| sorted.binary_search(&s).unwrap() as u32)
            .collect();
        if next == colors {
            break;
        }
        colors = next;
    }
    colors
}

struct Search<'a> {
    n: usize,
    adj: &'a [u32],
    ranks: Vec<u32>,
    /// Position of each placed original node in `seq`, or `usize::MAX`.
    seq: Vec<usize>,
    placed: u32,
    /// `best[k]` is the bit block for position `k` (width `k` bits) of the
    /// smallest completed string so far; entries past `valid` are stale.
    best: Vec<u32>,
    valid: usize,
}

impl Search<'_> {
    fn block_for(&self, candidate: usize, depth: usize) -> u32 {
        let mut block = 0u32;
        for &prev in &self.seq[..depth] {
            block = block << 1 | (self.adj[candidate] >> prev & 1);
        }
        block
    }

    /// True when swapping `u` and `v` is an automorphism.
    fn twins(&self, u: usize, v: usize) -> bool {
        let clear = !(1u32 << u | 1u32 << v);
        self.adj[u] & clear == self.adj[v] & clear
    }

    fn descend(&mut self, depth: usize) {
        if depth == self.n {
            self.valid = self.n;
            return;
        }
        let mut candidates: Vec<(u32, u32, usize)> = (0..self.n)
            .filter(|&i| self.placed >> i & 1 == 0)
            .map(|i| (self.block_for(i, depth), self.ranks[i], i))
            .collect();
        candidates.sort_unstable();

        let mut index = 0;
        while index < candidates.len() {
            let (block, _, _) = candidates[index];
            if self.valid > depth && block > self.best[depth] {
                return;
            }
            if self.valid > depth && block < self.best[depth] {
                // Everything recorded past this position belongs to a
                // larger string; rebuild from here.
                self.valid = depth;
            }
            if self.valid == depth {
                self.best[depth] = block;
                self.valid = depth + 1;
            }
            // Expand one representative per twin class within this block.
            let mut expanded: Vec<usize> = Vec::new();
            while index < candidates.len() && candidates[index].0 == block {
                let node = candidates[index].2;
                index += 1;
                if expanded.iter().any(|&e| self.twins(e, node)) {
                    continue;
                }
                expanded.push(node);
                self.seq[depth] = node;
                self.placed |= 1 << node;
                self.descend(depth + 1);
                self.placed &= !(1 << node);
                // Recursion always completes a string, so `valid` is back
                // to `n` here and `best[..=depth]` is untouched.
                debug_assert_eq!(self.valid, self.n);
            }
        }
    }
}

/// Canonical form under the default size limit of
/// [`DEFAULT_CANONICAL_LIMIT`] nodes.
pub fn canonical_form(g: &LabeledGraph) -> Result<CanonicalCode, GraphError> {
    canonical_form_bounded(g, DEFAULT_CANONICAL_LIMIT)
}

/// Canonical form with an explicit node-count limit (at most
/// [`super::MAX_NODES`]). Features are ignored; the code identifies the
/// unlabeled structure only.
pub fn canonical_form_bounded(
    g: &LabeledGraph,
    limit: usize,
) -> Result<CanonicalCode, GraphError> {
    let n = g.n();
    if n > limit || n > super::MAX_NODES {
        return Err(GraphError::CanonicalLimit { n, limit });
    }
    let adj = g.adjacency_masks();
    let ranks = refinement_ranks(n, &adj);
    let mut search = Search {
        n,
        adj: &adj,
        ranks,
        seq: vec![usize::MAX; n],
        placed: 0,
        best: vec![0; n],
        valid: 0,
    };
    search.descend(0);
    debug_assert_eq!(search.valid, n);

    let bit_count = n * (n - 1) / 2;
    let mut bytes = vec![0u8; 1 + bit_count.div_ceil(8)];
    bytes[0] = n as u8;
    let mut bit_index = 0;
    for (k, &block) in search.best.iter().enumerate().skip(1) {
        for i in 0..k {
            let bit = block >> (k - 1 - i) & 1;
            bytes[1 + bit_index / 8] |= (bit as u8) << (7 - bit_index % 8);
            bit_index += 1;
        }
    }
    Ok(CanonicalCode(bytes))
}

/// True exactly when the two graphs are isomorphic (features ignored).
pub fn is_isomorphic(g: &LabeledGraph, h: &LabeledGraph) -> Result<bool, GraphError> {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        // Still enforce the size limit so oversized inputs fail loudly.
        let n = g.n().max(h.n());
        if n > DEFAULT_CANONICAL_LIMIT {
            return Err(GraphError::CanonicalLimit {
                n,
                limit: DEFAULT_CANONICAL_LIMIT,
            });
        }
        return Ok(false);
    }
    if g.degree_sequence() != h.degree_sequence() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// Order of the automorphism group, by exhaustive permutation search.
/// Limited to 8 nodes; intended for verification at small sizes.
pub fn automorphism_count(g: &LabeledGraph) -> Result<u64, GraphError> {
    const LIMIT: usize = 8;
    let n = g.n();
    if n > LIMIT {
        return Err(GraphError::CanonicalLimit { n, limit: LIMIT });
    }
    let adj = g.adjacency_masks();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count = 0u64;
    permute(&mut perm, 0, &mut |p| {
        let ok = (0..n).all(|u| {
            let mut image = 0u32;
            let mut nb = adj[u];
            while nb != 0 {
                let v = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                image |= 1 << p[v];
            }
            image == adj[p[u]]
        });
        if ok {
            count += 1;
        }
    });
    Ok(count)
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}
