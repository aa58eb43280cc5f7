//! Star multiset transposition graphs `ST^ell_k` and their generalized
//! perfect codes.
//!
//! Vertices are words of length `k * ell` over `0..k` with every symbol
//! repeated `ell` times; an edge swaps position 0 with a later position
//! holding a different symbol, and carries that position as its color.
//! The crate builds these graphs, constructs the first-entry and
//! position-match codes, and checks their domination, partition, coloring
//! and decomposition properties, producing serializable certificates.

pub mod claims;
pub mod codes;
pub mod coloring;
pub mod decomp;
pub mod error;
pub mod iso;
pub mod mperm;
pub mod report;
pub mod stargraph;

pub use error::{Error, Result, WordError};
pub use mperm::{count_vertices, MultisetPerm, PermIndex};
pub use stargraph::StarGraph;
