//! Generalized coloring numbers of graphs.
//!
//! * [`reach`]: weak/strong reachability sets and admissibility for a fixed
//!   vertex ordering.
//! * [`exact`]: optimal orderings by exhaustive search, plus independent
//!   treewidth and treedepth oracles.
//! * [`uniform`]: a single ordering with bounded strong coloring numbers for
//!   several radii (or several graphs) at once.
//! * [`counterexample`]: graphs on which optimal orderings for two radii
//!   necessarily differ.
//! * [`battery`]: the seeded verification suites behind `colnum verify`.

pub mod battery;
pub mod counterexample;
pub mod error;
pub mod exact;
pub mod graph;
pub mod oracle;
pub mod reach;
pub mod rng;
pub mod uniform;

pub use error::{Error, Result};
pub use graph::{Graph, Ordering, Radius, VertexId};
pub use reach::{ReachKind, ReachReport};
