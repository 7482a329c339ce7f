use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cost matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("metric needs at least 2 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("negative cost {value} on arc ({from}, {to})")]
    NegativeCost { from: usize, to: usize, value: String },
    #[error("nonzero diagonal entry at node {0}")]
    NonZeroDiagonal(usize),
    #[error("triangle inequality violated: d({0},{2}) > d({0},{1}) + d({1},{2})")]
    TriangleViolation(usize, usize, usize),
    #[error("node {node} out of range for a metric on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("{what} exceeds the supported size ({size} > {limit})")]
    TooLarge { what: &'static str, size: usize, limit: usize },
    #[error("no perfect matching exists")]
    NoPerfectMatching,
    #[error("cost overflow")]
    Overflow,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invariant(msg: impl Into<String>) -> Error {
    Error::Invariant(msg.into())
}
