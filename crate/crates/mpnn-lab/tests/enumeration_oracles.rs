//! Census sizes cross-checked against independent generation routes:
//! exhaustive edge subsets deduped by permutation search, and the full
//! Prüfer-sequence catalogue of labeled trees.

mod common;

use common::*;
use mpnn_lab::enumeration::{
    count_connected_labeled, enumerate_connected_graphs, enumerate_trees,
};
use mpnn_lab::graph::automorphism_count;
use mpnn_lab::LabeledGraph;
use num_bigint::BigUint;

/// Known census sizes: connected graphs and free trees by node count.
const CONNECTED_CLASSES: [(usize, usize); 7] =
    [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)];
const TREE_CLASSES: [(usize, usize); 12] = [
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 2),
    (5, 3),
    (6, 6),
    (7, 11),
    (8, 23),
    (9, 47),
    (10, 106),
    (11, 235),
    (12, 551),
];

/// Census by isomorphism-search dedupe, no canonical forms involved.
fn census_by_permutation_search(v: usize) -> Vec<LabeledGraph> {
    let pairs: Vec<(usize, usize)> = (0..v)
        .flat_map(|i| (i + 1..v).map(move |j| (i, j)))
        .collect();
    let mut reps: Vec<LabeledGraph> = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = LabeledGraph::new(v, edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        if !reps.iter().any(|r| brute_force_isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

#[test]
fn graph_census_matches_permutation_search_oracle() {
    for v in 1..=5 {
        let independent = census_by_permutation_search(v);
        let census = enumerate_connected_graphs(v).unwrap();
        assert_eq!(census.len(), independent.len(), "v = {v}");
        // Same classes, not just the same count.
        for rep in census.representatives() {
            assert_eq!(
                independent
                    .iter()
                    .filter(|g| brute_force_isomorphic(g, rep))
                    .count(),
                1
            );
        }
    }
}

#[test]
fn graph_census_sizes_match_the_known_table() {
    // v = 7 (853 classes over 2^21 subsets) is exercised by the CLI at
    // release speed; the debug-mode suite stops at 6.
    for (v, classes) in &CONNECTED_CLASSES[..6] {
        assert_eq!(enumerate_connected_graphs(*v).unwrap().len(), *classes);
    }
}

/// Builds the tree encoded by a Prüfer sequence over `0..v`.
fn prufer_tree(seq: &[usize], v: usize) -> LabeledGraph {
    let mut degree = vec![1usize; v];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(v - 1);
    let mut used = vec![false; v];
    for &x in seq {
        let leaf = (0..v).find(|&i| degree[i] == 1 && !used[i]).unwrap();
        edges.push((leaf, x));
        used[leaf] = true;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..v).filter(|&i| degree[i] == 1 && !used[i]).collect();
    edges.push((rest[0], rest[1]));
    LabeledGraph::new(v, edges).unwrap()
}

#[test]
fn tree_census_matches_prufer_catalogue() {
    // All v^(v-2) labeled trees, deduped by canonical form.
    for v in 3..=8usize {
        let mut codes = std::collections::HashSet::new();
        let total = (v as u64).pow(v as u32 - 2);
        for index in 0..total {
            let mut seq = Vec::with_capacity(v - 2);
            let mut rest = index;
            for _ in 0..v - 2 {
                seq.push((rest % v as u64) as usize);
                rest /= v as u64;
            }
            let tree = prufer_tree(&seq, v);
            codes.insert(mpnn_lab::graph::canonical_form(&tree).unwrap());
        }
        let census = enumerate_trees(v).unwrap();
        assert_eq!(census.len(), codes.len(), "v = {v}");
        for code in census.codes() {
            assert!(codes.contains(code));
        }
    }
}

#[test]
fn tree_census_sizes_match_the_known_table() {
    for (v, classes) in TREE_CLASSES {
        assert_eq!(enumerate_trees(v).unwrap().len(), classes, "v = {v}");
    }
}

#[test]
fn counting_matches_brute_force_at_tiny_sizes() {
    // Directly count connected labeled graphs over all edge subsets.
    for v in 1..=4usize {
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|i| (i + 1..v).map(move |j| (i, j)))
            .collect();
        let mut count = 0u64;
        for mask in 0u64..1 << pairs.len() {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            if LabeledGraph::new(v, edges).unwrap().is_connected() {
                count += 1;
            }
        }
        assert_eq!(count_connected_labeled(v), BigUint::from(count));
    }
}

#[test]
fn orbit_sizes_sum_to_the_labeled_count() {
    // Sum of v!/|Aut| over census classes counts every labeled graph once.
    let factorial = |v: usize| (1..=v as u64).product::<u64>();
    for v in 1..=6usize {
        let census = enumerate_connected_graphs(v).unwrap();
        let mut total = BigUint::from(0u32);
        for rep in census.representatives() {
            let aut = automorphism_count(rep).unwrap();
            assert_eq!(factorial(v) % aut, 0);
            total += BigUint::from(factorial(v) / aut);
        }
        assert_eq!(total, count_connected_labeled(v), "v = {v}");
    }
}

#[test]
fn almost_all_labeled_graphs_are_connected() {
    // The connected fraction at v = 10 clears 1 - 2v/2^v - 0.01, which
    // at v = 10 is 1 - 2000/102400 - 1024/102400 = 99376/102400.
    let connected = count_connected_labeled(10);
    let total = BigUint::from(1u32) << 45;
    assert!(connected * 102_400u32 > total * 99_376u32);
}

#[test]
fn census_is_deterministic_across_thread_counts() {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| enumerate_connected_graphs(5).unwrap());
    let parallel = enumerate_connected_graphs(5).unwrap();
    assert_eq!(single.codes(), parallel.codes());
}
