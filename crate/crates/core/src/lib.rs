//! Distance labeling schemes for connected, weighted, undirected graphs.
//!
//! Every node receives a bit-string label; the distance between two nodes is
//! recovered from their two labels alone. The crate provides exact schemes
//! (naive table, Euler-walk deltas, heavy-path windows, constant-time
//! micro/macro decoding) and additive approximations, plus the shortest-path
//! oracle they are checked against and a counting lower bound with an
//! exhaustive small-instance verifier.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, text parsing
//! and the command line live in the `distlab` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod codec;
pub mod digest;
pub mod gen;
pub mod graph;
pub mod micro;
pub mod probe;
pub mod schemes;
pub mod subsample;
pub mod tree;

pub use graph::{DistanceOracle, GraphError, NodeId, WeightedGraph, INFINITY};
pub use probe::{NoProbe, Probe, StepCounter};
pub use schemes::{Label, LabelSet, SchemeError, SchemeId, SchemeParams};

/// `⌈log₂ x⌉` for `x ≥ 1`; `0` for `x ≤ 1`.
pub fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// Number of bits needed to write `x` in binary (`0` for `x = 0`).
pub fn bit_width(x: u64) -> u32 {
    64 - x.leading_zeros()
}
