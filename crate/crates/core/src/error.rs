use thiserror::Error;

use crate::graph::EdgeId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge #{index} is a loop at vertex {vertex}")]
    Loop { index: usize, vertex: usize },

    #[error("edge #{index} has endpoint {vertex} outside 0..{vertex_count}")]
    VertexOutOfRange {
        index: usize,
        vertex: usize,
        vertex_count: usize,
    },

    #[error("graphs are limited to {max} vertices, got {got}")]
    TooManyVertices { got: usize, max: usize },

    #[error("unknown edge id {0}")]
    UnknownEdge(EdgeId),

    #[error("vertex set must be a nonempty proper subset of the vertex set")]
    ImproperSubset,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("{what}: {got} vertices exceeds the bound of {bound}")]
    BoundExceeded {
        what: &'static str,
        got: usize,
        bound: usize,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("graph6 cannot encode parallel edges; use sparse6 or edge-list")]
    NotSimple,

    #[error("unknown check id `{id}`; known ids: {known}")]
    UnknownCheck { id: String, known: String },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
