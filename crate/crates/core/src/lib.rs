//! Exact solving and verification for the graph pegging game.
//!
//! A peg on `u` may jump over a peg on a neighbour `v` into an empty vertex
//! `w` that is also adjacent to `v`; the jumped peg is removed. This crate
//! answers which vertices a distribution of pegs can reach, computes the
//! pegging number `P(G)` and the optimal-pegging number `p(G)` of small graphs,
//! builds the known extremal distributions for paths, caterpillars, lobsters
//! and complete trees, and certifies unreachability with exact arithmetic in
//! `Q(ω)`, `ω = (√5 − 1) / 2`.
//!
//! Modules:
//!
//! * [`graph`]: graph families and BFS metrics.
//! * [`weights`]: exact golden-ratio arithmetic and weight bounds.
//! * [`engine`]: move semantics, reachability search and witness replay.
//! * [`solvers`]: `p(G)`, `P(G)`, constructions, verification, sampling.

pub mod engine;
pub mod error;
pub mod graph;
pub mod solvers;
pub mod weights;

pub use error::{Error, Result};

/// Vertex identifier, `0..vertex_count`.
pub type Vertex = usize;

/// Crate version embedded in serialized reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
