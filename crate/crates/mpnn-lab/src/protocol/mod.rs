//! Executable two-party protocols over finite function tables.
//!
//! A protocol is a rooted `s`-ary tree. Each internal node belongs to
//! Alice or Bob and carries an explicit lookup table from that party's
//! input index to a symbol in `0..s`; the symbol names the child to move
//! to. Executions end at leaves, and the set of inputs reaching a leaf is
//! always a combinatorial rectangle — the rectangles of the leaves
//! partition the input domain.

mod codes;
mod partition;

pub use codes::{edge_exchange_protocol, huffman_protocol, EdgeExchangeProtocol};
pub use partition::{min_monochromatic_partition, MAX_PARTITION_CELLS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error("table rows must all have length {0}")]
    RaggedTable(usize),
    #[error("table must be nonempty")]
    EmptyTable,
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u64),
    #[error("internal node must have exactly {expected} children, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("message table must cover {expected} inputs, got {got}")]
    MessageDomain { expected: usize, got: usize },
    #[error("message symbol {0} is outside the alphabet")]
    SymbolOutOfRange(u8),
    #[error("node index {0} out of range")]
    NodeOutOfRange(usize),
    #[error("node {0} is reachable through two paths; a protocol must be a tree")]
    NotATree(usize),
    #[error("input index {0} out of domain")]
    InputOutOfRange(usize),
    #[error("distribution weights must be nonnegative and sum to 1")]
    BadDistribution,
    #[error("table has {cells} cells, above the exhaustive-search limit {limit}")]
    TooManyCells { cells: usize, limit: usize },
}

/// The two parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

/// A finite function of two inputs: `value(a, b)` is the class id at row
/// `a` (Alice's input) and column `b` (Bob's input).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    values: Vec<Vec<u32>>,
}

impl FunctionTable {
    pub fn new(values: Vec<Vec<u32>>) -> Result<Self, ProtocolError> {
        let Some(first) = values.first() else {
            return Err(ProtocolError::EmptyTable);
        };
        if first.is_empty() {
            return Err(ProtocolError::EmptyTable);
        }
        let width = first.len();
        if values.iter().any(|row| row.len() != width) {
            return Err(ProtocolError::RaggedTable(width));
        }
        Ok(FunctionTable { values })
    }

    pub fn rows(&self) -> usize {
        self.values.len()
    }

    pub fn cols(&self) -> usize {
        self.values[0].len()
    }

    pub fn value(&self, a: usize, b: usize) -> u32 {
        self.values[a][b]
    }

    pub fn distinct_values(&self) -> usize {
        let mut vals: Vec<u32> = self.values.iter().flatten().copied().collect();
        vals.sort_unstable();
        vals.dedup();
        vals.len()
    }
}

/// Base-`s` lower bound on both-parties complexity from the number of
/// distinct table values: a correct protocol needs a monochromatic leaf
/// rectangle per value, hence at least `log_s(#values)` symbols.
pub fn class_count_bound(table: &FunctionTable, s: u64) -> f64 {
    (table.distinct_values() as f64).ln() / (s as f64).ln()
}

#[derive(Debug, Clone)]
pub enum ProtocolNode {
    Internal {
        owner: Party,
        /// `message[x]` is the symbol the owner sends on input `x`.
        message: Vec<u8>,
        children: Vec<usize>,
    },
    Leaf {
        output: Option<u32>,
    },
}

/// A rooted `s`-ary protocol tree with explicit message tables.
#[derive(Debug, Clone)]
pub struct ProtocolTree {
    s: u64,
    nodes: Vec<ProtocolNode>,
    root: usize,
    domain_a: usize,
    domain_b: usize,
}

impl ProtocolTree {
    /// Validates arity, message domains, symbol ranges, and treeness.
    pub fn new(
        s: u64,
        nodes: Vec<ProtocolNode>,
        root: usize,
        domain_a: usize,
        domain_b: usize,
    ) -> Result<Self, ProtocolError> {
        if s < 2 {
            return Err(ProtocolError::AlphabetTooSmall(s));
        }
        if root >= nodes.len() {
            return Err(ProtocolError::NodeOutOfRange(root));
        }
        let mut visited = vec![false; nodes.len()];
        let mut stack = vec![root];
        while let Some(index) = stack.pop() {
            if visited[index] {
                return Err(ProtocolError::NotATree(index));
            }
            visited[index] = true;
            if let ProtocolNode::Internal {
                owner,
                message,
                children,
            } = &nodes[index]
            {
                if children.len() != s as usize {
                    return Err(ProtocolError::WrongArity {
                        expected: s as usize,
                        got: children.len(),
                    });
                }
                let domain = match owner {
                    Party::Alice => domain_a,
                    Party::Bob => domain_b,
                };
                if message.len() != domain {
                    return Err(ProtocolError::MessageDomain {
                        expected: domain,
                        got: message.len(),
                    });
                }
                if let Some(&bad) = message.iter().find(|&&m| m as u64 >= s) {
                    return Err(ProtocolError::SymbolOutOfRange(bad));
                }
                for &child in children {
                    if child >= nodes.len() {
                        return Err(ProtocolError::NodeOutOfRange(child));
                    }
                    stack.push(child);
                }
            }
        }
        Ok(ProtocolTree {
            s,
            nodes,
            root,
            domain_a,
            domain_b,
        })
    }

    /// A tree with a single leaf: zero communication.
    pub fn trivial(s: u64, domain_a: usize, domain_b: usize, output: Option<u32>) -> Self {
        ProtocolTree::new(s, vec![ProtocolNode::Leaf { output }], 0, domain_a, domain_b)
            .expect("a single leaf is a valid tree")
    }

    pub fn alphabet(&self) -> u64 {
        self.s
    }

    pub fn domain_a(&self) -> usize {
        self.domain_a
    }

    pub fn domain_b(&self) -> usize {
        self.domain_b
    }

    pub fn node(&self, index: usize) -> &ProtocolNode {
        &self.nodes[index]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn leaf_ids(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| matches!(self.nodes[i], ProtocolNode::Leaf { .. }))
            .collect()
    }
}

/// One execution: the leaf reached and the symbols spoken on the way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub leaf: usize,
    pub transcript: Vec<(Party, u8)>,
}

impl Execution {
    pub fn length(&self) -> usize {
        self.transcript.len()
    }
}

/// Walks the tree from the root: at each internal node the owner looks up
/// its input in the message table and both parties descend to that child.
pub fn run_protocol(
    tree: &ProtocolTree,
    x_a: usize,
    x_b: usize,
) -> Result<Execution, ProtocolError> {
    if x_a >= tree.domain_a {
        return Err(ProtocolError::InputOutOfRange(x_a));
    }
    if x_b >= tree.domain_b {
        return Err(ProtocolError::InputOutOfRange(x_b));
    }
    let mut current = tree.root;
    let mut transcript = Vec::new();
    loop {
        match &tree.nodes[current] {
            ProtocolNode::Leaf { .. } => {
                return Ok(Execution {
                    leaf: current,
                    transcript,
                })
            }
            ProtocolNode::Internal {
                owner,
                message,
                children,
            } => {
                let symbol = match owner {
                    Party::Alice => message[x_a],
                    Party::Bob => message[x_b],
                };
                transcript.push((*owner, symbol));
                current = children[symbol as usize];
            }
        }
    }
}

/// A product subset of the input domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl Rectangle {
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .flat_map(move |&a| self.cols.iter().map(move |&b| (a, b)))
    }
}

/// The inputs reaching each leaf, grouped by leaf id. Leaves that no
/// input reaches are omitted.
pub fn leaf_input_sets(
    tree: &ProtocolTree,
) -> Result<Vec<(usize, Vec<(usize, usize)>)>, ProtocolError> {
    let mut by_leaf: std::collections::BTreeMap<usize, Vec<(usize, usize)>> =
        std::collections::BTreeMap::new();
    for a in 0..tree.domain_a {
        for b in 0..tree.domain_b {
            let exec = run_protocol(tree, a, b)?;
            by_leaf.entry(exec.leaf).or_default().push((a, b));
        }
    }
    Ok(by_leaf.into_iter().collect())
}

/// Checks that a family of cell sets consists of rectangles that
/// partition the `rows x cols` domain.
pub fn is_rectangle_partition(sets: &[Vec<(usize, usize)>], rows: usize, cols: usize) -> bool {
    let mut covered = vec![false; rows * cols];
    for set in sets {
        let mut rs: Vec<usize> = set.iter().map(|&(a, _)| a).collect();
        let mut cs: Vec<usize> = set.iter().map(|&(_, b)| b).collect();
        rs.sort_unstable();
        rs.dedup();
        cs.sort_unstable();
        cs.dedup();
        // Product structure: the set must be exactly rows x cols.
        if set.len() != rs.len() * cs.len() {
            return false;
        }
        let members: std::collections::HashSet<(usize, usize)> = set.iter().copied().collect();
        for &a in &rs {
            for &b in &cs {
                if !members.contains(&(a, b)) {
                    return false;
                }
            }
        }
        for &(a, b) in set {
            if a >= rows || b >= cols || covered[a * cols + b] {
                return false;
            }
            covered[a * cols + b] = true;
        }
    }
    covered.iter().all(|&c| c)
}

/// Runs the tree over the whole domain and reports whether the leaf input
/// sets are rectangles partitioning it, along with the rectangles.
pub fn verify_leaf_rectangles(
    tree: &ProtocolTree,
    table: &FunctionTable,
) -> Result<(bool, Vec<Rectangle>), ProtocolError> {
    debug_assert_eq!(tree.domain_a, table.rows());
    debug_assert_eq!(tree.domain_b, table.cols());
    let sets = leaf_input_sets(tree)?;
    let cell_sets: Vec<Vec<(usize, usize)>> = sets.iter().map(|(_, s)| s.clone()).collect();
    let ok = is_rectangle_partition(&cell_sets, table.rows(), table.cols());
    let rectangles = cell_sets
        .iter()
        .map(|set| {
            let mut rows: Vec<usize> = set.iter().map(|&(a, _)| a).collect();
            let mut cols: Vec<usize> = set.iter().map(|&(_, b)| b).collect();
            rows.sort_unstable();
            rows.dedup();
            cols.sort_unstable();
            cols.dedup();
            Rectangle { rows, cols }
        })
        .collect();
    Ok((ok, rectangles))
}

/// A probability distribution over the cells of a table.
#[derive(Debug, Clone)]
pub struct TableDistribution {
    weights: Vec<Vec<f64>>,
}

impl TableDistribution {
    pub fn new(weights: Vec<Vec<f64>>) -> Result<Self, ProtocolError> {
        let mut sum = 0.0;
        for row in &weights {
            for &w in row {
                if !(0.0..=1.0).contains(&w) || w.is_nan() {
                    return Err(ProtocolError::BadDistribution);
                }
                sum += w;
            }
        }
        if (sum - 1.0).abs() > 1e-9 {
            return Err(ProtocolError::BadDistribution);
        }
        Ok(TableDistribution { weights })
    }

    pub fn uniform(rows: usize, cols: usize) -> Self {
        let w = 1.0 / (rows * cols) as f64;
        TableDistribution {
            weights: vec![vec![w; cols]; rows],
        }
    }

    pub fn weight(&self, a: usize, b: usize) -> f64 {
        self.weights[a][b]
    }
}

/// Expected transcript length of the tree under the distribution.
pub fn expected_length(
    tree: &ProtocolTree,
    dist: &TableDistribution,
) -> Result<f64, ProtocolError> {
    let mut total = 0.0;
    for a in 0..tree.domain_a {
        for b in 0..tree.domain_b {
            let w = dist.weight(a, b);
            if w > 0.0 {
                total += w * run_protocol(tree, a, b)?.length() as f64;
            }
        }
    }
    Ok(total)
}

/// Entropy (base `s` of the tree) of the leaf reached under the
/// distribution. Never exceeds [`expected_length`].
pub fn leaf_entropy(tree: &ProtocolTree, dist: &TableDistribution) -> Result<f64, ProtocolError> {
    let mut mass: std::collections::BTreeMap<usize, f64> = std::collections::BTreeMap::new();
    for a in 0..tree.domain_a {
        for b in 0..tree.domain_b {
            let w = dist.weight(a, b);
            if w > 0.0 {
                *mass.entry(run_protocol(tree, a, b)?.leaf).or_insert(0.0) += w;
            }
        }
    }
    let ln_s = (tree.s as f64).ln();
    Ok(mass
        .values()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln() / ln_s)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Alice announces her 2-bit input over a binary alphabet.
    fn alice_two_bits() -> ProtocolTree {
        // Root asks for the high bit, two children ask for the low bit.
        let mut nodes = Vec::new();
        for _ in 0..4 {
            nodes.push(ProtocolNode::Leaf { output: None });
        }
        nodes.push(ProtocolNode::Internal {
            owner: Party::Alice,
            message: vec![0, 1, 0, 1],
            children: vec![0, 1],
        }); // node 4: low bit, left subtree
        nodes.push(ProtocolNode::Internal {
            owner: Party::Alice,
            message: vec![0, 1, 0, 1],
            children: vec![2, 3],
        }); // node 5: low bit, right subtree
        nodes.push(ProtocolNode::Internal {
            owner: Party::Alice,
            message: vec![0, 0, 1, 1],
            children: vec![4, 5],
        }); // node 6: high bit
        ProtocolTree::new(2, nodes, 6, 4, 1).unwrap()
    }

    #[test]
    fn depth_zero_tree() {
        let tree = ProtocolTree::trivial(2, 3, 3, Some(0));
        let exec = run_protocol(&tree, 1, 2).unwrap();
        assert_eq!(exec.length(), 0);
    }

    #[test]
    fn alice_announces_her_input() {
        let tree = alice_two_bits();
        for x in 0..4 {
            let exec = run_protocol(&tree, x, 0).unwrap();
            assert_eq!(exec.length(), 2);
            assert_eq!(exec.leaf, x);
        }
        assert!(matches!(
            run_protocol(&tree, 4, 0),
            Err(ProtocolError::InputOutOfRange(4))
        ));
    }

    #[test]
    fn validation_catches_malformed_trees() {
        // Wrong arity.
        let nodes = vec![
            ProtocolNode::Leaf { output: None },
            ProtocolNode::Internal {
                owner: Party::Alice,
                message: vec![0],
                children: vec![0],
            },
        ];
        assert!(matches!(
            ProtocolTree::new(2, nodes, 1, 1, 1),
            Err(ProtocolError::WrongArity { .. })
        ));
        // Shared child: not a tree.
        let nodes = vec![
            ProtocolNode::Leaf { output: None },
            ProtocolNode::Internal {
                owner: Party::Bob,
                message: vec![0, 1],
                children: vec![0, 0],
            },
        ];
        assert!(matches!(
            ProtocolTree::new(2, nodes, 1, 1, 2),
            Err(ProtocolError::NotATree(0))
        ));
        // Symbol outside alphabet.
        let nodes = vec![
            ProtocolNode::Leaf { output: None },
            ProtocolNode::Leaf { output: None },
            ProtocolNode::Internal {
                owner: Party::Alice,
                message: vec![2],
                children: vec![0, 1],
            },
        ];
        assert!(matches!(
            ProtocolTree::new(2, nodes, 2, 1, 1),
            Err(ProtocolError::SymbolOutOfRange(2))
        ));
    }

    #[test]
    fn leaf_rectangles_partition_the_domain() {
        let tree = alice_two_bits();
        let table = FunctionTable::new(vec![vec![0], vec![1], vec![2], vec![3]]).unwrap();
        let (ok, rects) = verify_leaf_rectangles(&tree, &table).unwrap();
        assert!(ok);
        assert_eq!(rects.len(), 4);
    }

    #[test]
    fn corrupted_leaf_map_fails_partition_check() {
        // Two sets that are not products / overlap.
        let not_product = vec![vec![(0, 0), (1, 1)]];
        assert!(!is_rectangle_partition(&not_product, 2, 2));
        let overlapping = vec![vec![(0, 0), (0, 1)], vec![(0, 1), (1, 0), (1, 1)]];
        assert!(!is_rectangle_partition(&overlapping, 2, 2));
        let good = vec![vec![(0, 0), (0, 1)], vec![(1, 0), (1, 1)]];
        assert!(is_rectangle_partition(&good, 2, 2));
    }

    #[test]
    fn table_validation() {
        assert!(matches!(
            FunctionTable::new(vec![]),
            Err(ProtocolError::EmptyTable)
        ));
        assert!(matches!(
            FunctionTable::new(vec![vec![0, 1], vec![2]]),
            Err(ProtocolError::RaggedTable(2))
        ));
        let t = FunctionTable::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(t.distinct_values(), 2);
        assert!((class_count_bound(&t, 2) - 1.0).abs() < 1e-12);
        let constant = FunctionTable::new(vec![vec![7, 7], vec![7, 7]]).unwrap();
        assert_eq!(class_count_bound(&constant, 2), 0.0);
    }

    #[test]
    fn expected_length_and_leaf_entropy() {
        let tree = alice_two_bits();
        // Uniform over Alice's four inputs: balanced depth-2 binary tree.
        let uniform = TableDistribution::uniform(4, 1);
        let len = expected_length(&tree, &uniform).unwrap();
        let ent = leaf_entropy(&tree, &uniform).unwrap();
        assert!((len - 2.0).abs() < 1e-12);
        assert!((ent - 2.0).abs() < 1e-12);
        // Skewed distribution: length stays 2, entropy collapses.
        let skew =
            TableDistribution::new(vec![vec![0.97], vec![0.01], vec![0.01], vec![0.01]]).unwrap();
        let len = expected_length(&tree, &skew).unwrap();
        let ent = leaf_entropy(&tree, &skew).unwrap();
        assert!((len - 2.0).abs() < 1e-12);
        assert!(ent < 0.25);
        assert!(len >= ent);
    }
}
