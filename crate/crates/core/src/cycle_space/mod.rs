//! The cycle space of a graph over GF(2): edge-set arithmetic, simple
//! cycles, fundamental bases and minimum cycle bases.

mod basis;
mod cycle;
mod edge_set;

pub use basis::{
    cycle_space_dimension, format_cycles, fundamental_basis, horton_candidates, horton_mcb,
    independence_sieve, is_cycle_basis, parse_cycles, sieve_order, span_contains, CycleBasis,
    SpanningTree,
};
pub use cycle::{cycle_from_edge_set, simple_cycles, Cycle};
pub use edge_set::{gf2_rank, EdgeSet, Gf2Basis};
