//! Concrete protocol constructions: full edge exchange and Huffman-coded
//! class announcements.

use super::{Party, ProtocolError, ProtocolNode, ProtocolTree};

/// Both parties transmit their entire edge set, recoded into base-`s`
/// symbols. This realizes the trivial upper bound for distinguishing
/// glued graphs: each party sends `ceil(C(v,2) * log_s 2)` symbols.
///
/// The tree for interesting `v` is astronomically large, so executions
/// are computed directly from the edge masks; [`EdgeExchangeProtocol::to_tree`]
/// materializes the explicit tree for tiny `v` only.
#[derive(Debug, Clone, Copy)]
pub struct EdgeExchangeProtocol {
    v: usize,
    s: u64,
    symbols_per_party: usize,
}

/// See [`EdgeExchangeProtocol`].
pub fn edge_exchange_protocol(v: usize, s: u64) -> Result<EdgeExchangeProtocol, ProtocolError> {
    if s < 2 {
        return Err(ProtocolError::AlphabetTooSmall(s));
    }
    let bits = v * (v - 1) / 2;
    // Smallest k with s^k >= 2^bits, i.e. ceil(bits * log_s 2), computed
    // exactly since the edge count can exceed machine-word bit widths.
    use num_bigint::BigUint;
    let target = BigUint::from(1u32) << bits;
    let mut k = 0usize;
    let mut reach = BigUint::from(1u32);
    while reach < target {
        reach *= s;
        k += 1;
    }
    Ok(EdgeExchangeProtocol {
        v,
        s,
        symbols_per_party: k,
    })
}

impl EdgeExchangeProtocol {
    pub fn v(&self) -> usize {
        self.v
    }

    pub fn edge_bits(&self) -> usize {
        self.v * (self.v - 1) / 2
    }

    pub fn symbols_per_party(&self) -> usize {
        self.symbols_per_party
    }

    /// Worst-case transcript length in symbols: both parties speak.
    pub fn worst_case_length(&self) -> u64 {
        2 * self.symbols_per_party as u64
    }

    fn digits(&self, mask: u64) -> Vec<u8> {
        let mut digits = vec![0u8; self.symbols_per_party];
        let mut rest = mask;
        for slot in digits.iter_mut().rev() {
            *slot = (rest % self.s) as u8;
            rest /= self.s;
        }
        digits
    }

    /// The transcript on a pair of edge masks: Alice's digits, then
    /// Bob's. After it, both parties know both graphs. Masks fit a
    /// machine word, so execution is limited to `v <= 11`.
    pub fn run(&self, mask_a: u64, mask_b: u64) -> Result<Vec<(Party, u8)>, ProtocolError> {
        if self.edge_bits() < 64 {
            let limit = 1u64 << self.edge_bits();
            if mask_a >= limit {
                return Err(ProtocolError::InputOutOfRange(mask_a as usize));
            }
            if mask_b >= limit {
                return Err(ProtocolError::InputOutOfRange(mask_b as usize));
            }
        }
        let mut transcript: Vec<(Party, u8)> =
            self.digits(mask_a).into_iter().map(|d| (Party::Alice, d)).collect();
        transcript.extend(self.digits(mask_b).into_iter().map(|d| (Party::Bob, d)));
        Ok(transcript)
    }

    /// Explicit tree over the full `2^C(v,2)` x `2^C(v,2)` domain.
    /// Only sensible for `v <= 4`.
    pub fn to_tree(&self) -> Result<ProtocolTree, ProtocolError> {
        if self.v > 4 {
            return Err(ProtocolError::TooManyCells {
                cells: 1 << self.edge_bits(),
                limit: 1 << 6,
            });
        }
        let domain = 1usize << self.edge_bits();
        let depth = 2 * self.symbols_per_party;
        let mut nodes: Vec<ProtocolNode> = Vec::new();
        let root = self.build_level(0, depth, domain, &mut nodes);
        ProtocolTree::new(self.s, nodes, root, domain, domain)
    }

    fn build_level(
        &self,
        level: usize,
        depth: usize,
        domain: usize,
        nodes: &mut Vec<ProtocolNode>,
    ) -> usize {
        if level == depth {
            nodes.push(ProtocolNode::Leaf { output: None });
            return nodes.len() - 1;
        }
        let children: Vec<usize> = (0..self.s)
            .map(|_| self.build_level(level + 1, depth, domain, nodes))
            .collect();
        let (owner, position) = if level < self.symbols_per_party {
            (Party::Alice, level)
        } else {
            (Party::Bob, level - self.symbols_per_party)
        };
        let message = (0..domain)
            .map(|mask| self.digits(mask as u64)[position])
            .collect();
        nodes.push(ProtocolNode::Internal {
            owner,
            message,
            children,
        });
        nodes.len() - 1
    }
}

/// Builds the optimal-expected-length announcement protocol for a class
/// distribution: Alice walks an `s`-ary Huffman code of her class, one
/// symbol per level. The expected length lands within one symbol of the
/// class entropy.
pub fn huffman_protocol(probs: &[f64], s: u64) -> Result<ProtocolTree, ProtocolError> {
    if s < 2 {
        return Err(ProtocolError::AlphabetTooSmall(s));
    }
    let mut sum = 0.0;
    for &p in probs {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(ProtocolError::BadDistribution);
        }
        sum += p;
    }
    if probs.is_empty() || (sum - 1.0).abs() > 1e-9 {
        return Err(ProtocolError::BadDistribution);
    }

    struct Merge {
        prob: f64,
        /// Leaf: class index (real) or none (padding).
        class: Option<usize>,
        children: Vec<usize>,
    }

    let mut pool: Vec<Merge> = probs
        .iter()
        .enumerate()
        .map(|(i, &p)| Merge {
            prob: p,
            class: Some(i),
            children: Vec::new(),
        })
        .collect();
    // Pad with zero-probability leaves so every merge takes exactly s.
    let arity = s as usize;
    while pool.len() > 1 && (pool.len() - 1) % (arity - 1) != 0 {
        pool.push(Merge {
            prob: 0.0,
            class: None,
            children: Vec::new(),
        });
    }

    let mut active: Vec<usize> = (0..pool.len()).collect();
    while active.len() > 1 {
        // Smallest probabilities first; index breaks ties deterministically.
        active.sort_by(|&a, &b| {
            pool[a]
                .prob
                .partial_cmp(&pool[b].prob)
                .unwrap()
                .then(a.cmp(&b))
        });
        let taken: Vec<usize> = active.drain(..arity).collect();
        let merged = Merge {
            prob: taken.iter().map(|&i| pool[i].prob).sum(),
            class: None,
            children: taken,
        };
        pool.push(merged);
        active.push(pool.len() - 1);
    }
    let root = active[0];

    // Classes reachable below each merge node, for the message tables.
    fn classes_below(pool: &[Merge], node: usize, out: &mut Vec<usize>) {
        if let Some(c) = pool[node].class {
            out.push(c);
        }
        for &child in &pool[node].children {
            classes_below(pool, child, out);
        }
    }

    fn convert(
        pool: &[Merge],
        node: usize,
        domain: usize,
        nodes: &mut Vec<ProtocolNode>,
    ) -> usize {
        if pool[node].children.is_empty() {
            nodes.push(ProtocolNode::Leaf {
                output: pool[node].class.map(|c| c as u32),
            });
            return nodes.len() - 1;
        }
        let mut message = vec![0u8; domain];
        let mut children = Vec::with_capacity(pool[node].children.len());
        for (symbol, &child) in pool[node].children.iter().enumerate() {
            let mut below = Vec::new();
            classes_below(pool, child, &mut below);
            for c in below {
                message[c] = symbol as u8;
            }
            children.push(convert(pool, child, domain, nodes));
        }
        nodes.push(ProtocolNode::Internal {
            owner: Party::Alice,
            message,
            children,
        });
        nodes.len() - 1
    }

    let mut nodes = Vec::new();
    let root_index = convert(&pool, root, probs.len(), &mut nodes);
    ProtocolTree::new(s, nodes, root_index, probs.len(), 1)
}
