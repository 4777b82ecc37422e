//! Graph Nim on edge-weighted graphs.
//!
//! Two players alternately choose a vertex and remove weight from its incident edges
//! (strictly positive in total); whoever moves last wins. This crate provides:
//!
//! - [`game`]: topologies, the four-edge catalog, move generation, automorphisms;
//! - [`nim`]: Nim sums and the galaxy-graph reduction to Nim;
//! - [`solver`]: a memoized retrograde solver used as ground truth;
//! - [`characterizations`]: closed-form classifiers with rule traces;
//! - [`verify`]: exhaustive classifier-vs-solver verification and its report format;
//! - [`wire`]: the JSON shapes used by the HTTP service.

pub mod characterizations;
pub mod error;
pub mod game;
pub mod nim;
pub mod solver;
pub mod verify;
pub mod wire;

pub use characterizations::{classify, Classification, RuleId, Verdict};
pub use error::{Error, Result};
pub use game::{apply_move, catalog_graph, enumerate_moves, GraphId, GraphTopology, Move, WeightConfig};
pub use solver::{Outcome, Solver};
