//! Rainbow spanning trees in edge-colored multigraphs.
//!
//! The crate decides and constructs
//!
//! * `t` pairwise color-disjoint rainbow spanning trees ([`color_disjoint`]),
//! * color-disjoint extensions of edge-disjoint rainbow forests to spanning
//!   trees ([`extension`]),
//! * `t` edge-disjoint rainbow spanning trees in colored complete graphs above
//!   the anti-Ramsey threshold ([`antiramsey`]),
//!
//! and, when no solution exists, emits a vertex partition whose crossing
//! colors fall short of the count the trees would need ([`partition`]).

pub mod antiramsey;
pub mod certificate;
pub mod color_disjoint;
pub mod error;
pub mod extension;
pub mod graph;
pub mod io;
pub mod partition;

pub use certificate::{Certificate, PartitionSource, Solution, SolveStats};
pub use error::{Error, Result};
pub use graph::{ColorSet, ColoredGraph, Disjointness, Edge, Forest, ForestFamily, VertexPartition};
