//! Sparsity measures and the arboricity-based acyclic coloring.

mod acyclic;
mod arboricity;
mod flow;
mod mad;

pub use acyclic::{
    acyclic_coloring_construct, arb_bound_value, check_arb_bound, digit_count, digit_graphs,
    AcyclicConstruction, ArbBoundReport, Coloring, ARB_BOUND_LIMIT,
};
pub use arboricity::{arboricity, ForestDecomposition};
pub use mad::{densest_subgraph, mad};
