use thiserror::Error;

use crate::graph::Vertex;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty point set")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has an even number of vertices ({0})")]
    EvenOrder(usize),
    #[error("graph needs at least 3 vertices")]
    TooSmall,
    #[error("duplicate lattice point ({0}, {1})")]
    DuplicatePoint(i64, i64),
    #[error("operation needs lattice coordinates but the graph is abstract")]
    NonLattice,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(Vertex),
    #[error("no nearly perfect matching exposes vertex {0}")]
    NoExposingMatching(Vertex),
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(Vertex, Vertex),
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("invalid placement: {0}")]
    InvalidPlacement(String),
    #[error("illegal move at index {index}: {reason}")]
    IllegalMove { index: usize, reason: String },
    #[error("placement is not aligned: {0}")]
    NotAligned(String),
    #[error("invalid ear decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("state budget of {0} exceeded")]
    Budget(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
