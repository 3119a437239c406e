#![forbid(unsafe_code)]

//! Communication-capacity analysis for message-passing networks.
//!
//! The crate answers a family of questions about synchronous message passing
//! on graphs: how many symbols can two halves of a network exchange during a
//! bounded forward pass (capacity), how many symbols must two parties exchange
//! to name the isomorphism class of their joint graph (complexity), and what
//! happens empirically when a quantized message passer runs below that budget.
//!
//! The pieces fit together as follows:
//!
//! * [`graph`] — labeled graphs, canonical forms, cuts, and the line-based
//!   text format used by the command-line tools.
//! * [`enumeration`] — censuses of connected graphs and free trees, plus
//!   exact counts of connected labeled graphs.
//! * [`universe`] — glued two-part graph universes, samplers, and JSONL
//!   dataset generation with one-hot identifier features.
//! * [`capacity`] — per-layer schedules, the closed-form capacity bound, and
//!   the exact max-flow computation it relaxes.
//! * [`bounds`] — closed-form lower bounds for distinguishing connected
//!   graphs and trees, entropy helpers, and error-probability predictions.
//! * [`protocol`] — executable two-party protocol trees over finite function
//!   tables, rectangle verification, and partition bounds.
//! * [`simulator`] — 1-WL color refinement and a capacity-limited quantized
//!   forward pass for measuring class collisions.
//!
//! Everything is deterministic given explicit seeds; no global state.

pub mod bounds;
pub mod capacity;
pub mod enumeration;
pub mod graph;
pub mod protocol;
pub mod simulator;
pub mod universe;
pub mod util;

pub use graph::{CanonicalCode, CutConvention, LabeledGraph, NodeSet};
pub use universe::{GraphInstance, Split, Universe};
