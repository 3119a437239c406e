//! Shared helpers for the oracle test suites. Everything here is
//! deliberately independent of the library's algorithms: permutation
//! search and exhaustive enumeration only.

#![allow(dead_code)]

use mpnn_lab::LabeledGraph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

pub fn rng(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

/// All permutations of `0..n` in a deterministic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn rec(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == items.len() {
            out.push(items.clone());
            return;
        }
        for i in k..items.len() {
            items.swap(k, i);
            rec(items, k + 1, out);
            items.swap(k, i);
        }
    }
    rec(&mut items, 0, &mut out);
    out
}

/// Column-major upper-triangular bitstring of a graph as-is.
pub fn adjacency_string(g: &LabeledGraph) -> Vec<bool> {
    let n = g.n();
    let mut bits = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            bits.push(g.has_edge(i, j));
        }
    }
    bits
}

/// The minimal adjacency string over all relabelings: the brute-force
/// definition of the canonical form.
pub fn brute_force_minimal_string(g: &LabeledGraph) -> Vec<bool> {
    all_permutations(g.n())
        .into_iter()
        .map(|perm| adjacency_string(&g.permuted(&perm).unwrap()))
        .min()
        .unwrap()
}

/// Permutation-search isomorphism test.
pub fn brute_force_isomorphic(g: &LabeledGraph, h: &LabeledGraph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    all_permutations(g.n())
        .into_iter()
        .any(|perm| &g.permuted(&perm).unwrap() == h)
}

/// Uniform random permutation.
pub fn random_permutation(n: usize, rng: &mut ChaCha12Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// Random graph with the given edge probability.
pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha12Rng) -> LabeledGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    LabeledGraph::new(n, edges).unwrap()
}

/// Random connected graph by rejection.
pub fn random_connected_graph(n: usize, p: f64, rng: &mut ChaCha12Rng) -> LabeledGraph {
    loop {
        let g = random_graph(n, p, rng);
        if g.is_connected() {
            return g;
        }
    }
}

pub fn path_graph(n: usize) -> LabeledGraph {
    LabeledGraph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
}

pub fn complete_graph(n: usize) -> LabeledGraph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    LabeledGraph::new(n, edges).unwrap()
}

pub fn star_graph(n: usize) -> LabeledGraph {
    LabeledGraph::new(n, (1..n).map(|i| (0, i))).unwrap()
}
