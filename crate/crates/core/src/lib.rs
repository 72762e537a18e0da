//! Local clique cover number of small graphs.
//!
//! A clique covering of `G` is a family of cliques containing every edge;
//! the local clique cover number `lcc(G)` is the least possible maximum
//! number of cliques meeting a single vertex. The crate computes it exactly,
//! builds covers with checked valency certificates, accounts clique-partition
//! sums over a graph and its complement, and sweeps all labeled graphs of a
//! given order.

pub mod constructions;
pub mod cover;
pub mod graph;
pub mod harness;
pub mod invariants;
pub mod ng_bounds;

pub use cover::{lcc_exact, CliqueCover, CliquePartition, CoverCertificate, Method};
pub use graph::{Graph, GraphError, VertexSet};
