//! Independent-set encoding for graphs, the container lemmas built on it,
//! and the application pipelines they support, with exact brute-force
//! oracles at every step.
//!
//! The encoding walks an independent set through max-degree orderings of a
//! shrinking candidate set and records only ordering positions; the record
//! is invertible, and counting the possible records bounds the number of
//! independent sets. The applications cover regular-graph counts, sum-free
//! subsets of `[n]`, C4-free graph enumeration, spectral refinements, and
//! 3-AP-free subsets of random sets.

pub mod arithmetic;
pub mod bitset;
pub mod bounds;
pub mod c4;
pub mod catalog;
pub mod error;
pub mod graph;
pub mod kw;
pub mod oracle;
pub mod spectral;

pub use bitset::VertexSet;
pub use bounds::LogBound;
pub use error::ErrorClass;
pub use graph::{Graph, GraphError, VertexOrdering};
pub use kw::{ContainerFamily, KwError, KwTrace};
pub use oracle::{CountTable, OracleError};
