use thiserror::Error;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    InvalidVertex { vertex: VertexId, n: usize },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("vertex sets differ: expected {expected} vertices, found {found}")]
    Mismatch { expected: usize, found: usize },

    #[error("exact search limited to {cap} vertices, graph has {n} (use a heuristic ordering instead)")]
    CapExceeded { n: usize, cap: usize },

    #[error("path packing budget exceeded: more than {budget} candidate paths")]
    BudgetExceeded { budget: usize },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
