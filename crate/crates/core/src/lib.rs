//! Construction, certification and auditing of c-tree-partitions.
//!
//! A c-tree-partition of a graph `G` partitions `V(G)` into parts whose
//! quotient graph has treewidth at most `c`; its width is the largest part.
//! The crate builds such partitions for bounded-treewidth graphs from an
//! oracle that answers disjointedness queries on a covering of `G`, and
//! checks every result against an explicit certificate.

pub mod bits;
pub mod config;
pub mod constructions;
pub mod coverings;
pub mod error;
pub mod families;
pub mod flow;
pub mod graph;
pub mod oracles;
pub mod partition;
pub mod partitioner;
pub mod pattern;
pub mod transforms;
pub mod treewidth;
pub mod verify;

pub use error::{Error, Result};
pub use families::{generate, FamilySpec};
pub use graph::Graph;
