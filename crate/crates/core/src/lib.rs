//! Homomorphisms, chromatic numbers and sparsity bounds for graphs with
//! `n` arc types and `m` edge types.

pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod solver;
pub mod sparsity;
pub mod targets;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{
    AdjType, Arc, Edge, NmGraph, NmGraphBuilder, Signature, UndirectedGraph, MAX_TYPES,
};
