//! Seeded samplers over universes.
//!
//! All samplers are pure functions of their seed: the random stream is a
//! ChaCha generator seeded explicitly, and draws happen in a fixed order
//! (pair, endpoints, features), so outputs are identical across platforms.

use super::{GraphInstance, Split, Universe, UniverseError};
use crate::enumeration::CensusFamily;
use crate::graph::LabeledGraph;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// Attempts before a connectivity-conditioned draw gives up.
pub const CONNECTIVITY_RETRY_BUDGET: u32 = 10_000;

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed)
}

fn random_permutation(len: usize, rng: &mut ChaCha12Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    for i in (1..len).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    perm
}

/// One-hot identifier features for a glued graph: part A nodes receive a
/// random permutation of positions `0..v`, part B of positions `v..n`.
/// The rows form an `n x n` permutation matrix.
fn one_hot_features(n: usize, rng: &mut ChaCha12Rng) -> Vec<Vec<u8>> {
    let v = n / 2;
    let perm_a = random_permutation(v, rng);
    let perm_b = random_permutation(v, rng);
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let position = if i < v { perm_a[i] } else { v + perm_b[i - v] };
        let mut row = vec![0u8; n];
        row[position] = 1;
        rows.push(row);
    }
    rows
}

/// A draw from the edge-independent random graph model: each of the
/// `v choose 2` edges is present independently with probability `p`.
pub fn sample_gnp(v: usize, p: f64, seed: u64) -> Result<LabeledGraph, UniverseError> {
    let mut rng = rng_from_seed(seed);
    sample_gnp_with(v, p, &mut rng)
}

fn sample_gnp_with(
    v: usize,
    p: f64,
    rng: &mut ChaCha12Rng,
) -> Result<LabeledGraph, UniverseError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(UniverseError::BadProbability(p));
    }
    let mut edges = Vec::new();
    for i in 0..v {
        for j in i + 1..v {
            if rng.random::<f64>() < p {
                edges.push((i, j));
            }
        }
    }
    Ok(LabeledGraph::new(v, edges)?)
}

impl Universe {
    /// Uniform draw over unordered class pairs: pick one of the
    /// `c*(c+1)/2` pairs, glue the representatives at uniform endpoints,
    /// and attach one-hot identifier features.
    pub fn sample_instance(&self, seed: u64) -> Result<GraphInstance, UniverseError> {
        let mut rng = rng_from_seed(seed);
        self.sample_instance_with(seed, &mut rng)
    }

    fn sample_instance_with(
        &self,
        seed: u64,
        rng: &mut ChaCha12Rng,
    ) -> Result<GraphInstance, UniverseError> {
        let pair_index = rng.random_range(0..self.class_count());
        let (i, j) = self.class_id_pair(pair_index);
        let reps = self.census().representatives();
        let v = self.part_nodes();
        let endpoint_a = rng.random_range(0..v);
        let endpoint_b = rng.random_range(0..v);
        let glued = super::glue(&reps[i], &reps[j], endpoint_a, endpoint_b)?;
        let graph = glued.with_features(one_hot_features(self.n(), rng))?;
        Ok(GraphInstance {
            graph,
            class_id: pair_index,
            split: Split::Train,
            seed,
        })
    }

    /// The two-connected-halves distribution: each half is an independent
    /// edge-probability-`p` draw resampled until connected, and the halves
    /// are joined by one uniformly chosen bridge edge. Requires the
    /// connected-graphs family so the halves can be classified.
    pub fn sample_bvp(&self, p: f64, seed: u64) -> Result<GraphInstance, UniverseError> {
        if self.family() != CensusFamily::ConnectedGraphs {
            return Err(UniverseError::FamilyMismatch {
                expected: CensusFamily::ConnectedGraphs,
                got: self.family(),
            });
        }
        let mut rng = rng_from_seed(seed);
        let v = self.part_nodes();
        let g_a = connected_gnp(v, p, &mut rng)?;
        let g_b = connected_gnp(v, p, &mut rng)?;
        let endpoint_a = rng.random_range(0..v);
        let endpoint_b = rng.random_range(0..v);
        let glued = super::glue(&g_a, &g_b, endpoint_a, endpoint_b)?;
        let code_a = crate::graph::canonical_form(&g_a)?;
        let code_b = crate::graph::canonical_form(&g_b)?;
        let i = self
            .census()
            .index_of(&code_a)
            .ok_or(UniverseError::NotInUniverse)?;
        let j = self
            .census()
            .index_of(&code_b)
            .ok_or(UniverseError::NotInUniverse)?;
        let graph = glued.with_features(one_hot_features(self.n(), &mut rng))?;
        Ok(GraphInstance {
            graph,
            class_id: self.pair_class_id(i, j),
            split: Split::Train,
            seed,
        })
    }
}

fn connected_gnp(
    v: usize,
    p: f64,
    rng: &mut ChaCha12Rng,
) -> Result<LabeledGraph, UniverseError> {
    for _ in 0..CONNECTIVITY_RETRY_BUDGET {
        let g = sample_gnp_with(v, p, rng)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(UniverseError::ConnectivityBudget {
        budget: CONNECTIVITY_RETRY_BUDGET,
        p,
    })
}

/// Uniform draw from a tree universe; the tree-family name of
/// [`Universe::sample_instance`].
pub fn sample_tv(universe: &Universe, seed: u64) -> Result<GraphInstance, UniverseError> {
    if universe.family() != CensusFamily::Trees {
        return Err(UniverseError::FamilyMismatch {
            expected: CensusFamily::Trees,
            got: universe.family(),
        });
    }
    universe.sample_instance(seed)
}
