//! Directed flow networks with integer capacities and a Dinic-style
//! blocking-flow solver.
//!
//! Infinite capacities are resolved to one more than the sum of all finite
//! capacities, which keeps arithmetic exact and makes an "infinite" arc
//! strictly bigger than any finite cut.

/// An arc capacity; `Infinite` is reserved for super-terminal arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Capacity {
    Finite(u64),
    Infinite,
}

#[derive(Debug, Clone, Copy)]
struct Arc {
    from: usize,
    to: usize,
    cap: Capacity,
}

/// A capacitated directed network with designated source and sink.
///
/// Arc insertion order is preserved, so repeated solves traverse arcs
/// identically and flows decompose the same way on every run.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    node_count: usize,
    source: usize,
    sink: usize,
    arcs: Vec<Arc>,
}

impl FlowNetwork {
    /// Creates an empty network. Panics if the terminals are invalid;
    /// terminals are chosen by construction code, not parsed input.
    pub fn new(node_count: usize, source: usize, sink: usize) -> Self {
        assert!(
            source < node_count && sink < node_count && source != sink,
            "source and sink must be distinct nodes in range"
        );
        FlowNetwork {
            node_count,
            source,
            sink,
            arcs: Vec::new(),
        }
    }

    pub fn add_arc(&mut self, from: usize, to: usize, cap: Capacity) {
        assert!(
            from < self.node_count && to < self.node_count,
            "arc endpoint out of range"
        );
        assert!(
            to != self.source && from != self.sink,
            "no arcs into the source or out of the sink"
        );
        self.arcs.push(Arc { from, to, cap });
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Arcs as `(from, to, capacity)` with infinities resolved.
    pub fn resolved_arcs(&self) -> Vec<(usize, usize, u64)> {
        let inf = self.infinity();
        self.arcs
            .iter()
            .map(|a| {
                let c = match a.cap {
                    Capacity::Finite(c) => c,
                    Capacity::Infinite => inf,
                };
                (a.from, a.to, c)
            })
            .collect()
    }

    /// The value standing in for infinity: one more than the sum of all
    /// finite capacities.
    pub fn infinity(&self) -> u64 {
        self.arcs
            .iter()
            .map(|a| match a.cap {
                Capacity::Finite(c) => c,
                Capacity::Infinite => 0,
            })
            .sum::<u64>()
            + 1
    }

    /// Exact maximum flow from source to sink, equal to the minimum cut.
    pub fn max_flow(&self) -> u64 {
        Dinic::new(self).run()
    }
}

struct ResidualEdge {
    to: usize,
    cap: u64,
    rev: usize,
}

struct Dinic {
    graph: Vec<Vec<ResidualEdge>>,
    level: Vec<i32>,
    iter: Vec<usize>,
    source: usize,
    sink: usize,
}

impl Dinic {
    fn new(net: &FlowNetwork) -> Self {
        let mut graph: Vec<Vec<ResidualEdge>> = (0..net.node_count).map(|_| Vec::new()).collect();
        for (from, to, cap) in net.resolved_arcs() {
            let rev_fwd = graph[to].len();
            let rev_bwd = graph[from].len();
            graph[from].push(ResidualEdge {
                to,
                cap,
                rev: rev_fwd,
            });
            graph[to].push(ResidualEdge {
                to: from,
                cap: 0,
                rev: rev_bwd,
            });
        }
        Dinic {
            level: vec![-1; net.node_count],
            iter: vec![0; net.node_count],
            graph,
            source: net.source,
            sink: net.sink,
        }
    }

    fn bfs(&mut self) -> bool {
        self.level.fill(-1);
        self.level[self.source] = 0;
        let mut queue = std::collections::VecDeque::from([self.source]);
        while let Some(x) = queue.pop_front() {
            for e in &self.graph[x] {
                if e.cap > 0 && self.level[e.to] < 0 {
                    self.level[e.to] = self.level[x] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        self.level[self.sink] >= 0
    }

    fn dfs(&mut self, node: usize, limit: u64) -> u64 {
        if node == self.sink {
            return limit;
        }
        while self.iter[node] < self.graph[node].len() {
            let i = self.iter[node];
            let (to, cap, rev) = {
                let e = &self.graph[node][i];
                (e.to, e.cap, e.rev)
            };
            if cap > 0 && self.level[node] < self.level[to] {
                let pushed = self.dfs(to, limit.min(cap));
                if pushed > 0 {
                    self.graph[node][i].cap -= pushed;
                    self.graph[to][rev].cap += pushed;
                    return pushed;
                }
            }
            self.iter[node] += 1;
        }
        0
    }

    fn run(&mut self) -> u64 {
        let mut total = 0;
        while self.bfs() {
            self.iter.fill(0);
            loop {
                let pushed = self.dfs(self.source, u64::MAX);
                if pushed == 0 {
                    break;
                }
                total += pushed;
            }
        }
        total
    }
}
