//! Closed-form lower bounds on the symbols two parties must exchange to
//! name the isomorphism class of a glued graph, plus the entropy and
//! tail-bound helpers the derivations rest on.
//!
//! Conventions used throughout:
//!
//! * `s` is the alphabet size; logarithms written `log_s` are base `s`.
//! * `v` is the node count of one part, so a universe member has `n = 2v`
//!   nodes.
//! * Vanishing correction terms are dropped, so a bound can dip below
//!   zero at small `v`. Values are reported raw together with a
//!   `vacuous` flag instead of being clamped.

use crate::enumeration::CensusFamily;
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Growth rate of the number of free trees, as printed in the standard
/// asymptotics `t(v) ~ c * alpha^v * v^(-5/2)`.
pub const OTTER_ALPHA: f64 = 2.9557652;
/// Leading constant of the same asymptotics.
pub const OTTER_C: f64 = 0.5349496;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u64),
    #[error("node count must be even, got {0}")]
    OddNodeCount(usize),
    #[error("expected complexity must satisfy 0 < c <= beta_m, got c = {c}, beta_m = {beta_m}")]
    InconsistentErrorInputs { c: f64, beta_m: f64 },
    #[error("distribution weights must be nonnegative and sum to 1")]
    BadDistribution,
    #[error("values must not exceed the declared maximum {0}")]
    ValueAboveBeta(f64),
    #[error("partition must cover each outcome exactly once")]
    BadPartition,
}

fn log_s(x: f64, s: u64) -> f64 {
    x.ln() / (s as f64).ln()
}

fn check_alphabet(s: u64) -> Result<(), BoundsError> {
    if s < 2 {
        return Err(BoundsError::AlphabetTooSmall(s));
    }
    Ok(())
}

/// Binary entropy in base `s`: `-(1-p) log_s(1-p) - p log_s(p)`, with the
/// convention `0 log 0 = 0`.
pub fn entropy(p: f64, s: u64) -> Result<f64, BoundsError> {
    check_alphabet(s)?;
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(BoundsError::BadProbability(p));
    }
    let term = |q: f64| if q == 0.0 { 0.0 } else { -q * log_s(q, s) };
    Ok(term(p) + term(1.0 - p))
}

/// Worst-case lower bound for distinguishing glued connected graphs when
/// both parties must learn the class:
/// `v^2 / log2(s) - 2v log_s(v sqrt(2) / e) - log_s(2 v e^2)`.
pub fn beta_graphs_worstcase(v: usize, s: u64) -> f64 {
    let vf = v as f64;
    vf * vf / (s as f64).log2()
        - 2.0 * vf * log_s(vf * std::f64::consts::SQRT_2 / std::f64::consts::E, s)
        - log_s(2.0 * vf * std::f64::consts::E * std::f64::consts::E, s)
}

/// One-sided companion of [`beta_graphs_worstcase`]:
/// `(beta - 1/log2(s)) / 2`.
pub fn beta_graphs_worstcase_one_sided(v: usize, s: u64) -> f64 {
    (beta_graphs_worstcase(v, s) - (s as f64).log2().recip()) / 2.0
}

/// Expected-case lower bound when both halves are edge-probability-`p`
/// draws: `v^2 H_s(p) - v (2 log_s(v/e) + H_s(p)) - log_s(2 v e^2)`.
pub fn beta_graphs_expected(v: usize, p: f64, s: u64) -> Result<f64, BoundsError> {
    let h = entropy(p, s)?;
    let vf = v as f64;
    Ok(vf * vf * h
        - vf * (2.0 * log_s(vf / std::f64::consts::E, s) + h)
        - log_s(2.0 * vf * std::f64::consts::E * std::f64::consts::E, s))
}

/// One-sided companion of [`beta_graphs_expected`]:
/// `beta/2 - (v^2 - v(1 - H_2(p)) + 1) / (2 log2 s)`.
pub fn beta_graphs_expected_one_sided(v: usize, p: f64, s: u64) -> Result<f64, BoundsError> {
    let beta = beta_graphs_expected(v, p, s)?;
    let h2 = entropy(p, 2)?;
    let vf = v as f64;
    Ok(beta / 2.0 - (vf * vf - vf * (1.0 - h2) + 1.0) / (2.0 * (s as f64).log2()))
}

/// Lower bound for distinguishing glued trees:
/// `2 v log_s(alpha) - 5 log_s(v) + log_s(7)`.
pub fn beta_trees(v: usize, s: u64) -> f64 {
    let vf = v as f64;
    2.0 * vf * log_s(OTTER_ALPHA, s) - 5.0 * log_s(vf, s) + log_s(7.0, s)
}

/// One-sided companion of [`beta_trees`]: `(beta + log_s 2) / 2`.
pub fn beta_trees_one_sided(v: usize, s: u64) -> f64 {
    (beta_trees(v, s) + log_s(2.0, s)) / 2.0
}

/// Transfer from both-parties to one-party complexity: knowing parties
/// can announce the answer at a cost of naming one of the
/// `classes_per_party` possibilities, so
/// `c_one >= c_both - log_s(classes_per_party)`.
pub fn one_sided_transfer(c_both: f64, classes_per_party: u64, s: u64) -> f64 {
    c_both - log_s(classes_per_party.max(1) as f64, s)
}

/// Asymptotic estimate of the number of free trees on `v` nodes,
/// `c * alpha^v * v^(-5/2)`. Meaningless at very small `v`.
pub fn otter_approx(v: usize) -> f64 {
    let vf = v as f64;
    OTTER_C * OTTER_ALPHA.powf(vf) * vf.powf(-2.5)
}

/// Which readout discipline the network uses; majority voting needs one
/// party to learn the class, consensus needs both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Readout {
    Majority,
    Consensus,
}

impl Readout {
    pub fn mode(self) -> Mode {
        match self {
            Readout::Majority => Mode::One,
            Readout::Consensus => Mode::Both,
        }
    }
}

impl fmt::Display for Readout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Readout::Majority => write!(f, "majority"),
            Readout::Consensus => write!(f, "consensus"),
        }
    }
}

/// How many parties must end up knowing the class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    One,
    Both,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::One => write!(f, "one"),
            Mode::Both => write!(f, "both"),
        }
    }
}

/// Evaluated bounds for one `(family, n, readout, s)` configuration.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub family: CensusFamily,
    pub n: usize,
    pub v: usize,
    pub s: u64,
    pub p: Option<f64>,
    pub readout: Readout,
    pub applicable_mode: Mode,
    /// Bound when both parties must know the class.
    pub beta_both: f64,
    /// Bound when one party suffices.
    pub bound_one: f64,
    /// Worst-case cost of the edge-exchange protocol in symbols.
    pub upper_bound: f64,
    /// True when the applicable bound is not positive.
    pub vacuous: bool,
    /// `(delta, predicted error probability)` over a fixed delta grid,
    /// with the trivial upper bound standing in for the optimal
    /// protocol's worst-case length.
    pub error_prob: Vec<(f64, f64)>,
}

impl BoundReport {
    /// The bound matching the readout's mode.
    pub fn applicable_bound(&self) -> f64 {
        match self.applicable_mode {
            Mode::One => self.bound_one,
            Mode::Both => self.beta_both,
        }
    }
}

/// Evaluates the lower bounds for an `n`-node universe of the family.
///
/// With `p` present (connected graphs only) the expected-case formulas
/// are used, otherwise the worst-case ones. The trivial upper bound is
/// edge exchange: `v(v-1)/log2 s` symbols for graphs, `2(v-1)/log2 s`
/// for trees.
pub fn main_bounds(
    n: usize,
    family: CensusFamily,
    readout: Readout,
    s: u64,
    p: Option<f64>,
) -> Result<BoundReport, BoundsError> {
    check_alphabet(s)?;
    if n == 0 || n % 2 != 0 {
        return Err(BoundsError::OddNodeCount(n));
    }
    let v = n / 2;
    let vf = v as f64;
    let (beta_both, bound_one) = match (family, p) {
        (CensusFamily::ConnectedGraphs, None) => (
            beta_graphs_worstcase(v, s),
            beta_graphs_worstcase_one_sided(v, s),
        ),
        (CensusFamily::ConnectedGraphs, Some(p)) => (
            beta_graphs_expected(v, p, s)?,
            beta_graphs_expected_one_sided(v, p, s)?,
        ),
        (CensusFamily::Trees, _) => (beta_trees(v, s), beta_trees_one_sided(v, s)),
    };
    let upper_bound = match family {
        CensusFamily::ConnectedGraphs => vf * (vf - 1.0) / (s as f64).log2(),
        CensusFamily::Trees => 2.0 * (vf - 1.0) / (s as f64).log2(),
    };
    let mode = readout.mode();
    let applicable = match mode {
        Mode::One => bound_one,
        Mode::Both => beta_both,
    };
    let vacuous = !(applicable > 0.0);
    let error_prob = if vacuous || upper_bound < applicable {
        Vec::new()
    } else {
        (0..=10)
            .map(|i| {
                let delta = i as f64 / 10.0;
                let prob = error_probability(delta, applicable, upper_bound)
                    .expect("grid inputs satisfy the preconditions");
                (delta, prob)
            })
            .collect()
    };
    Ok(BoundReport {
        family,
        n,
        v,
        s,
        p,
        readout,
        applicable_mode: mode,
        beta_both,
        bound_one,
        upper_bound,
        vacuous,
        error_prob,
    })
}

/// Predicted failure probability for a network whose capacity sits below
/// `delta` times the expected complexity:
/// `(1 - delta) / (beta_m / c_f - delta)`, where `beta_m` bounds the
/// worst-case length of the expectation-optimal protocol.
pub fn error_probability(delta: f64, c_f_expected: f64, beta_m: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&delta) || delta.is_nan() {
        return Err(BoundsError::BadProbability(delta));
    }
    if !(c_f_expected > 0.0) || beta_m < c_f_expected {
        return Err(BoundsError::InconsistentErrorInputs {
            c: c_f_expected,
            beta_m,
        });
    }
    Ok((1.0 - delta) / (beta_m / c_f_expected - delta))
}

/// Output of [`reverse_markov`]: the guaranteed tail mass and the exact
/// one, with `exact >= bound` always.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReverseMarkov {
    pub bound: f64,
    pub exact_tail: f64,
    pub mean: f64,
}

/// For a random variable `X <= beta`, the tail `P(X > delta E[X])` is at
/// least `(1 - delta) / (beta/E[X] - delta)`. Returns both that bound and
/// the exact tail of the given finite distribution.
pub fn reverse_markov(
    distribution: &[(f64, f64)],
    beta: f64,
    delta: f64,
) -> Result<ReverseMarkov, BoundsError> {
    if !(0.0..=1.0).contains(&delta) || delta.is_nan() {
        return Err(BoundsError::BadProbability(delta));
    }
    validate_probabilities(distribution.iter().map(|&(_, p)| p))?;
    if distribution.iter().any(|&(v, _)| v > beta) {
        return Err(BoundsError::ValueAboveBeta(beta));
    }
    let mean: f64 = distribution.iter().map(|&(v, p)| v * p).sum();
    let threshold = delta * mean;
    let exact_tail: f64 = distribution
        .iter()
        .filter(|&&(v, _)| v > threshold)
        .map(|&(_, p)| p)
        .sum();
    let bound = if mean <= 0.0 {
        // Degenerate distribution at zero; the guarantee is vacuous.
        0.0
    } else {
        (1.0 - delta) / (beta / mean - delta)
    };
    Ok(ReverseMarkov {
        bound,
        exact_tail,
        mean,
    })
}

fn validate_probabilities(probs: impl Iterator<Item = f64>) -> Result<(), BoundsError> {
    let mut sum = 0.0;
    for p in probs {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(BoundsError::BadDistribution);
        }
        sum += p;
    }
    if (sum - 1.0).abs() > 1e-9 {
        return Err(BoundsError::BadDistribution);
    }
    Ok(())
}

/// Entropy never drops below the entropy of any coarsening: returns
/// `(H_s(X), sum_i P(A_i) log_s(1/P(A_i)))` for a partition of the
/// outcome indices, where the left side is at least the right.
pub fn entropy_partition_check(
    distribution: &[f64],
    partition: &[Vec<usize>],
    s: u64,
) -> Result<(f64, f64), BoundsError> {
    check_alphabet(s)?;
    validate_probabilities(distribution.iter().copied())?;
    let mut seen = vec![false; distribution.len()];
    for block in partition {
        for &i in block {
            if i >= distribution.len() || seen[i] {
                return Err(BoundsError::BadPartition);
            }
            seen[i] = true;
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(BoundsError::BadPartition);
    }
    let point = |p: f64| if p > 0.0 { -p * log_s(p, s) } else { 0.0 };
    let lhs: f64 = distribution.iter().map(|&p| point(p)).sum();
    let rhs: f64 = partition
        .iter()
        .map(|block| point(block.iter().map(|&i| distribution[i]).sum()))
        .sum();
    Ok((lhs, rhs))
}
