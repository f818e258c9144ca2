//! Exact search and certification for bipartite Ramsey problems
//! `K_{m,n} -> (K_{s,t}, K_{u,v})`.
//!
//! Polarity used throughout: `K_{m,n}` *arrows* `(H1, H2)` when **no** subgraph
//! `G` of `K_{m,n}` avoids `H1` while its complement avoids `H2`. A subgraph
//! that avoids both is a *good coloring* and certifies non-arrowing.

pub mod arrowing;
pub mod bigraph;
pub mod commands;
pub mod error;
pub mod reproduce;
pub mod sat;
mod search;
pub mod witnesses;
pub mod zarankiewicz;

pub use bigraph::{Biclique, BicliqueShape, BipartiteGraph, ColSet};
pub use error::{Error, Result};
