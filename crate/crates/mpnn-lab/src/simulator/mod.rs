//! Empirical distinguishability: exact color refinement and a quantized
//! message-passing forward pass.

mod quantized;

pub use quantized::{
    collision_rate, fingerprint, quantized_forward, readout, CollisionReport, ForwardInit,
    QuantizedState, ReadoutMode,
};

use crate::graph::LabeledGraph;

/// Initial coloring for refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WlInit {
    /// Every node starts with the same color.
    Anonymous,
    /// Nodes start partitioned by their feature row (all distinct rows
    /// get distinct colors); graphs without features fall back to
    /// anonymous.
    FromFeatures,
}

/// A stable coloring: per-node color ids and the number of refining
/// rounds it took to reach them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorPartition {
    pub colors: Vec<u32>,
    pub rounds: usize,
}

impl ColorPartition {
    pub fn class_count(&self) -> usize {
        let mut seen: Vec<u32> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Sorted color list; equal multisets mean the refinement could not
    /// tell the colorings apart.
    pub fn color_multiset(&self) -> Vec<u32> {
        let mut colors = self.colors.clone();
        colors.sort_unstable();
        colors
    }

    fn same_partition(&self, other: &[u32]) -> bool {
        let n = self.colors.len();
        (0..n).all(|i| {
            (0..n).all(|j| (self.colors[i] == self.colors[j]) == (other[i] == other[j]))
        })
    }
}

/// Iterated color refinement: each round a node's color becomes the
/// (renumbered) pair of its color and the sorted multiset of neighbor
/// colors. Stops when the partition stabilizes or after `max_rounds`.
/// The partition stabilizes within `n` rounds.
pub fn wl_refine(g: &LabeledGraph, init: WlInit, max_rounds: usize) -> ColorPartition {
    let n = g.n();
    let adj = g.adjacency_masks();
    let mut colors: Vec<u32> = match (init, g.features()) {
        (WlInit::FromFeatures, Some(rows)) => {
            let mut distinct: Vec<&Vec<u8>> = rows.iter().collect();
            distinct.sort();
            distinct.dedup();
            rows.iter()
                .map(|r| distinct.binary_search(&r).unwrap() as u32)
                .collect()
        }
        _ => vec![0; n],
    };
    let mut rounds = 0;
    for _ in 0..max_rounds {
        let mut signatures: Vec<(u32, Vec<u32>)> = Vec::with_capacity(n);
        for i in 0..n {
            let mut nb: Vec<u32> = (0..n)
                .filter(|&j| adj[i] >> j & 1 == 1)
                .map(|j| colors[j])
                .collect();
            nb.sort_unstable();
            signatures.push((colors[i], nb));
        }
        // Renumber in signature order for a canonical id assignment.
        let mut sorted: Vec<&(u32, Vec<u32>)> = signatures.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|sig| sorted.binary_search(&sig).unwrap() as u32)
            .collect();
        let partition = ColorPartition {
            colors: colors.clone(),
            rounds,
        };
        if partition.same_partition(&next) {
            break;
        }
        colors = next;
        rounds += 1;
    }
    ColorPartition { colors, rounds }
}

/// Runs refinement on the disjoint union of two graphs so their colors
/// are comparable, then compares the halves' color multisets. `true`
/// means the refinement separates the two graphs.
pub fn wl_distinguishes(g: &LabeledGraph, h: &LabeledGraph, max_rounds: usize) -> bool {
    if g.n() != h.n() {
        return true;
    }
    let n = g.n();
    let union_edges = g
        .edges()
        .iter()
        .copied()
        .chain(h.edges().iter().map(|&(u, v)| (u + n, v + n)));
    let union = LabeledGraph::new(2 * n, union_edges).expect("union of valid graphs is valid");
    let partition = wl_refine(&union, WlInit::Anonymous, max_rounds);
    let mut left: Vec<u32> = partition.colors[..n].to_vec();
    let mut right: Vec<u32> = partition.colors[n..].to_vec();
    left.sort_unstable();
    right.sort_unstable();
    left != right
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> LabeledGraph {
        LabeledGraph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn regular_graphs_stay_monochrome() {
        let cycle = LabeledGraph::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        let partition = wl_refine(&cycle, WlInit::Anonymous, 32);
        assert_eq!(partition.class_count(), 1);
        assert_eq!(partition.rounds, 0);
    }

    #[test]
    fn path_vs_star_split_after_one_round() {
        let star = LabeledGraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert!(wl_distinguishes(&path(4), &star, 1));
    }

    #[test]
    fn stabilizes_within_n_rounds() {
        for v in 2..9 {
            let partition = wl_refine(&path(v), WlInit::Anonymous, 100);
            assert!(partition.rounds <= v);
        }
    }

    #[test]
    fn path_colors_mirror_symmetry() {
        let partition = wl_refine(&path(5), WlInit::Anonymous, 32);
        // Ends pair up, second-from-ends pair up, the middle is alone.
        assert_eq!(partition.colors[0], partition.colors[4]);
        assert_eq!(partition.colors[1], partition.colors[3]);
        assert_eq!(partition.class_count(), 3);
    }

    #[test]
    fn feature_init_refines_from_rows() {
        let g = path(3)
            .with_features(vec![vec![1], vec![1], vec![2]])
            .unwrap();
        let partition = wl_refine(&g, WlInit::FromFeatures, 0);
        assert_eq!(partition.class_count(), 2);
    }

    #[test]
    fn union_trick_separates_different_sizes() {
        assert!(wl_distinguishes(&path(3), &path(4), 10));
    }
}
