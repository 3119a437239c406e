//! A capacity-limited message-passing forward pass.
//!
//! This models quantization, not training: at every layer a node's
//! outgoing message is the first `m` base-`s` digits of a seeded stable
//! hash of its state, and its next state is the first `w` digits of a
//! hash of its old state together with the sorted multiset of received
//! messages. Truncation to `w` and `m` digits is what enforces the
//! capacity limit; the hash stands in for an injective aggregator.
//!
//! Because messages and updates only ever see multisets, relabeling a
//! graph together with its feature rows permutes the final states without
//! changing their multiset.

use super::LabeledGraph;
use crate::capacity::MpnnSchedule;
use crate::universe::GraphInstance;
use crate::util::{DigitStream, StableHasher};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimulatorError {
    #[error("feature initialization requires per-node features")]
    MissingFeatures,
    #[error("collision measurement needs at least 2 instances, got {0}")]
    SampleTooSmall(usize),
    #[error("instances must share one node count; saw {0} and {1}")]
    MixedSizes(usize, usize),
}

/// A per-node vector of base-`s` digits.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuantizedState(pub Vec<u8>);

/// Initial state of every node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForwardInit {
    /// All nodes start from an empty state.
    Anonymous,
    /// Nodes start from their feature digit rows.
    Features,
}

fn hash_digits(seed: u64, domain: u64, parts: &[&[u8]], s: u64, count: usize) -> Vec<u8> {
    let mut hasher = StableHasher::new(seed);
    hasher.write_u64(domain);
    for part in parts {
        hasher.write_framed(part);
    }
    DigitStream::new(hasher.finish(), s).take(count)
}

/// Runs the quantized forward pass and returns the final per-node states.
pub fn quantized_forward(
    g: &LabeledGraph,
    schedule: &MpnnSchedule,
    init: ForwardInit,
    seed: u64,
) -> Result<Vec<QuantizedState>, SimulatorError> {
    let n = g.n();
    let s = schedule.alphabet();
    let mut states: Vec<Vec<u8>> = match init {
        ForwardInit::Anonymous => vec![Vec::new(); n],
        ForwardInit::Features => g
            .features()
            .ok_or(SimulatorError::MissingFeatures)?
            .iter()
            .cloned()
            .collect(),
    };
    let adj = g.adjacency_masks();
    for (layer_index, caps) in schedule.layers().enumerate() {
        let layer_tag = layer_index as u64;
        // Outgoing messages: a truncated hash of the sender's state.
        let messages: Vec<Vec<u8>> = states
            .iter()
            .map(|state| {
                hash_digits(
                    seed,
                    layer_tag << 1,
                    &[state.as_slice()],
                    s,
                    caps.message as usize,
                )
            })
            .collect();
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let mut received: Vec<&[u8]> = (0..n)
                .filter(|&j| adj[i] >> j & 1 == 1)
                .map(|j| messages[j].as_slice())
                .collect();
            received.sort_unstable();
            let mut parts: Vec<&[u8]> = vec![states[i].as_slice()];
            parts.extend(received);
            next.push(hash_digits(
                seed,
                layer_tag << 1 | 1,
                &parts,
                s,
                caps.width as usize,
            ));
        }
        states = next;
    }
    Ok(states.into_iter().map(QuantizedState).collect())
}

/// How the readout aggregates per-node votes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadoutMode {
    /// The most frequent mapped class wins; ties abstain.
    Majority,
    /// All nodes must agree on one mapped class.
    Consensus,
}

/// Maps node states to classes and aggregates. `None` is the abstain
/// outcome. Nodes whose state is not in the map cast no vote under
/// majority and veto consensus.
pub fn readout(
    states: &[QuantizedState],
    mode: ReadoutMode,
    class_map: &HashMap<QuantizedState, u64>,
) -> Option<u64> {
    match mode {
        ReadoutMode::Consensus => {
            let mut agreed: Option<u64> = None;
            for state in states {
                let class = class_map.get(state)?;
                if *agreed.get_or_insert(*class) != *class {
                    return None;
                }
            }
            agreed
        }
        ReadoutMode::Majority => {
            let mut votes: HashMap<u64, usize> = HashMap::new();
            for state in states {
                if let Some(&class) = class_map.get(state) {
                    *votes.entry(class).or_insert(0) += 1;
                }
            }
            let best = votes.values().copied().max()?;
            let mut winners = votes.iter().filter(|&(_, &count)| count == best);
            let (&class, _) = winners.next()?;
            if winners.next().is_some() {
                return None;
            }
            Some(class)
        }
    }
}

/// The order-free summary of a forward pass: the sorted multiset of
/// final node states. Any readout's verdict is a function of it.
pub fn fingerprint(states: &[QuantizedState]) -> Vec<QuantizedState> {
    let mut sorted = states.to_vec();
    sorted.sort();
    sorted
}

/// Result of a collision measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct CollisionReport {
    /// Fraction of differing-class pairs with equal fingerprints.
    pub rate: f64,
    pub colliding_pairs: u64,
    pub pairs_checked: u64,
}

/// Measures how often instances of different classes end up with the
/// same fingerprint. The fingerprint compares full state multisets, the
/// strictest possible readout, so these collisions lower-bound the
/// confusion of any readout. The mode is accepted for symmetry with
/// [`readout`] but does not change the measurement.
pub fn collision_rate(
    sample: &[GraphInstance],
    schedule: &MpnnSchedule,
    _mode: ReadoutMode,
    seed: u64,
) -> Result<CollisionReport, SimulatorError> {
    if sample.len() < 2 {
        return Err(SimulatorError::SampleTooSmall(sample.len()));
    }
    let n = sample[0].graph.n();
    if let Some(other) = sample.iter().find(|inst| inst.graph.n() != n) {
        return Err(SimulatorError::MixedSizes(n, other.graph.n()));
    }
    let mut groups: HashMap<Vec<QuantizedState>, Vec<u64>> = HashMap::new();
    for inst in sample {
        let states = quantized_forward(&inst.graph, schedule, ForwardInit::Features, seed)?;
        groups
            .entry(fingerprint(&states))
            .or_default()
            .push(inst.class_id);
    }

    let differing_pairs = |classes: &[u64]| {
        let total = classes.len() as u64;
        let mut by_class: HashMap<u64, u64> = HashMap::new();
        for &c in classes {
            *by_class.entry(c).or_insert(0) += 1;
        }
        let same: u64 = by_class.values().map(|&k| k * (k - 1) / 2).sum();
        total * (total - 1) / 2 - same
    };

    let all_classes: Vec<u64> = sample.iter().map(|i| i.class_id).collect();
    let pairs_checked = differing_pairs(&all_classes);
    let colliding_pairs: u64 = groups.values().map(|classes| differing_pairs(classes)).sum();
    let rate = if pairs_checked == 0 {
        0.0
    } else {
        colliding_pairs as f64 / pairs_checked as f64
    };
    Ok(CollisionReport {
        rate,
        colliding_pairs,
        pairs_checked,
    })
}
