use thiserror::Error;

use crate::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },

    #[error("graph is not a tree")]
    NotATree,

    #[error("graph is not a {expected}")]
    WrongFamily { expected: &'static str },

    #[error("illegal move {from}->{over}->{to}: {reason}")]
    IllegalMove {
        from: Vertex,
        over: Vertex,
        to: Vertex,
        reason: &'static str,
    },

    #[error("illegal move at index {index}: {source}")]
    IllegalMoveAt {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("construction failed verification: {0}")]
    VerificationFailed(String),

    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
