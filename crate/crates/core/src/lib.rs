//! Matching covered graphs: perfect matchings, removable classes, tight cuts,
//! bricks and braces, and a registry of structural checks over small graphs.

pub mod canon;
pub mod classify;
pub mod codec;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod graph;
pub mod matching;
pub mod props;
pub mod selftest;
pub mod tightcut;
pub mod vset;

pub use error::{Error, Result};
pub use graph::{build_graph, are_isomorphic, Cut, Edge, EdgeId, Multigraph};
pub use vset::VertexSet;
