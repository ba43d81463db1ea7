//! Search, enumeration and construction tools for edge-colored complete graphs:
//! unavoidable pattern templates, balanced subgraph embeddings, exact
//! balancing numbers, extremal colorings and Eulerian path embeddings.

pub mod balance;
pub mod bitset;
pub mod canon;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod euler;
pub mod graph;
pub mod heuristics;
pub mod patterns;

pub use canon::{canonical_key, CanonicalKey};
pub use error::{Error, Result};
pub use graph::{Color, ColorHistogram, ColoredGraph};
pub use patterns::{
    enumerate_patterns, separator_pattern, tournament_pattern, PatternCatalogue, PatternTemplate,
};
