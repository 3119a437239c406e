//! Communication capacity of message-passing schedules.
//!
//! A schedule fixes, per layer, the node width `w`, the message size `m`,
//! and the global-state size `gamma`, all counted in base-`s` symbols. Two
//! quantities are computed for a graph split into parts `a` and `b`:
//!
//! * the closed-form bound `cut(a, b) * sum(min(m, w)) + sum(gamma)`, and
//! * the exact per-layer maximum flow through the node-split reduction,
//!   summed over layers.
//!
//! The exact value never exceeds the bound, and matches it whenever the
//! separating cut is the bottleneck.

mod flow;

pub use flow::{Capacity, FlowNetwork};

use crate::graph::{GraphError, LabeledGraph, NodeSet};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScheduleError {
    #[error("schedule needs at least one layer")]
    EmptySchedule,
    #[error("width, message and global lists must all have length {0}")]
    LayerMismatch(usize),
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u64),
}

/// Per-layer width/message/global sizes plus the alphabet size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MpnnSchedule {
    width: Vec<u64>,
    message: Vec<u64>,
    global: Vec<u64>,
    s: u64,
}

/// The three capacities relevant to a single layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerCaps {
    pub width: u64,
    pub message: u64,
    pub global: u64,
}

impl MpnnSchedule {
    pub fn new(
        width: Vec<u64>,
        message: Vec<u64>,
        global: Vec<u64>,
        s: u64,
    ) -> Result<Self, ScheduleError> {
        if width.is_empty() {
            return Err(ScheduleError::EmptySchedule);
        }
        if message.len() != width.len() || global.len() != width.len() {
            return Err(ScheduleError::LayerMismatch(width.len()));
        }
        if s < 2 {
            return Err(ScheduleError::AlphabetTooSmall(s));
        }
        Ok(MpnnSchedule {
            width,
            message,
            global,
            s,
        })
    }

    /// A schedule with the same sizes at every layer.
    pub fn uniform(
        depth: usize,
        width: u64,
        message: u64,
        global: u64,
        s: u64,
    ) -> Result<Self, ScheduleError> {
        MpnnSchedule::new(
            vec![width; depth],
            vec![message; depth],
            vec![global; depth],
            s,
        )
    }

    /// The GIN-style configuration: message size equal to width, no
    /// global state.
    pub fn gin(depth: usize, width: u64, s: u64) -> Result<Self, ScheduleError> {
        MpnnSchedule::uniform(depth, width, width, 0, s)
    }

    pub fn depth(&self) -> usize {
        self.width.len()
    }

    pub fn alphabet(&self) -> u64 {
        self.s
    }

    pub fn layer(&self, index: usize) -> LayerCaps {
        LayerCaps {
            width: self.width[index],
            message: self.message[index],
            global: self.global[index],
        }
    }

    pub fn layers(&self) -> impl Iterator<Item = LayerCaps> + '_ {
        (0..self.depth()).map(|i| self.layer(i))
    }

    pub fn widths(&self) -> &[u64] {
        &self.width
    }

    pub fn messages(&self) -> &[u64] {
        &self.message
    }

    pub fn globals(&self) -> &[u64] {
        &self.global
    }
}

/// The closed-form capacity bound
/// `cut * sum(min(m, w)) + sum(gamma)` in symbols.
pub fn capacity_upper_bound(schedule: &MpnnSchedule, cut_value: u64) -> u64 {
    let through_edges: u64 = schedule.layers().map(|l| l.message.min(l.width)).sum();
    let through_global: u64 = schedule.layers().map(|l| l.global).sum();
    cut_value * through_edges + through_global
}

/// Capacity of the GIN-style schedule (`m = w`, no global state) at the
/// given cut value; pass `2` for a single bridge counted bidirectionally.
pub fn gin_capacity(depth: usize, width: u64, cut_value: u64) -> u64 {
    cut_value * depth as u64 * width
}

/// Builds the single-layer flow network for one communication round.
///
/// Every graph node `i` splits into `in_i`/`out_i` joined by an arc of
/// capacity `w`; each graph edge becomes two opposite arcs of capacity `m`;
/// when `gamma > 0` a split global node is attached to every graph node by
/// message arcs; a super-source feeds `a` and a super-sink drains `b`
/// through infinite arcs.
pub fn build_flow_network(
    g: &LabeledGraph,
    a: NodeSet,
    b: NodeSet,
    caps: LayerCaps,
) -> Result<FlowNetwork, GraphError> {
    if a.is_empty() || b.is_empty() || a.intersects(b) {
        return Err(GraphError::BadPartition);
    }
    let full = NodeSet::full(g.n());
    if a.mask() & !full.mask() != 0 || b.mask() & !full.mask() != 0 {
        return Err(GraphError::BadPartition);
    }

    let n = g.n();
    let node_in = |i: usize| 2 * i;
    let node_out = |i: usize| 2 * i + 1;
    let with_global = caps.global > 0;
    let global_in = 2 * n;
    let global_out = 2 * n + 1;
    let offset = if with_global { 2 * n + 2 } else { 2 * n };
    let source = offset;
    let sink = offset + 1;

    let mut net = FlowNetwork::new(offset + 2, source, sink);
    for i in 0..n {
        net.add_arc(node_in(i), node_out(i), Capacity::Finite(caps.width));
    }
    for &(u, v) in g.edges() {
        net.add_arc(node_out(u), node_in(v), Capacity::Finite(caps.message));
        net.add_arc(node_out(v), node_in(u), Capacity::Finite(caps.message));
    }
    if with_global {
        net.add_arc(global_in, global_out, Capacity::Finite(caps.global));
        for i in 0..n {
            net.add_arc(node_out(i), global_in, Capacity::Finite(caps.message));
            net.add_arc(global_out, node_in(i), Capacity::Finite(caps.message));
        }
    }
    for i in a.iter() {
        net.add_arc(source, node_in(i), Capacity::Infinite);
    }
    for i in b.iter() {
        net.add_arc(node_out(i), sink, Capacity::Infinite);
    }
    Ok(net)
}

/// Exact maximum flow of a network; thin wrapper over
/// [`FlowNetwork::max_flow`].
pub fn max_flow(network: &FlowNetwork) -> u64 {
    network.max_flow()
}

/// Exact communication capacity: the per-layer maximum flows summed over
/// the schedule.
///
/// The flow measures one direction; the reduction is symmetric, so the
/// reverse direction carries the same amount. The closed-form bound
/// reflects two-way traffic by doubling only its cut factor — node and
/// global storage are shared between directions — so this value is
/// compared against [`capacity_upper_bound`] at the cut of the chosen
/// [`crate::graph::CutConvention`], with equality under the undirected
/// convention whenever the separating cut is the bottleneck.
pub fn capacity_exact(
    g: &LabeledGraph,
    a: NodeSet,
    b: NodeSet,
    schedule: &MpnnSchedule,
) -> Result<u64, GraphError> {
    let mut total = 0;
    for caps in schedule.layers() {
        let net = build_flow_network(g, a, b, caps)?;
        total += net.max_flow();
    }
    Ok(total)
}
