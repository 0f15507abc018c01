//! Exact graph invariants, exhaustive enumeration, and claim checkers for
//! degree-based indices, spectral orders, bipartite structure, covers, and
//! Markov chains on tournaments.

pub mod bipartite;
pub mod chain;
pub mod competition;
pub mod cover;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod registry;
pub mod report;
pub mod spectral;
pub mod trees;

pub use error::{Error, Result};
pub use graph::{Bipartition, DegreeSequence, Graph};
pub use report::{Status, VerificationReport};
