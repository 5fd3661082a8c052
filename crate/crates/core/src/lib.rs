//! Cycle-space tools for testing Hamiltonicity through the Grinberg
//! equation: minimum cycle bases, solution enumeration, removable-cycle
//! analysis, and an exact backtracking oracle to audit the criterion against.

pub mod cycle_space;
pub mod decision;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod grinberg;
pub mod removal;

#[cfg(test)]
mod testing;

pub use cycle_space::{Cycle, CycleBasis, EdgeSet};
pub use error::{CycleError, GraphError, GrinbergError, RemovalError};
pub use graph::{Edge, EdgeId, Graph, VertexId};
pub use graph6::{encode_graph6, parse_graph6};
