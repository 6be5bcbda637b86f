use thiserror::Error;

/// Errors raised while building instances or running the solver.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    #[error("invalid traffic: {0}")]
    InvalidTraffic(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("route endpoints must differ (node {0})")]
    SameEndpoints(usize),

    #[error("chromosome is not a permutation of 0..{0}")]
    NotAPermutation(usize),

    #[error("parent lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("demand {demand} of {magnitude} units exceeds granularity {granularity}; split it first")]
    DemandExceedsCapacity {
        demand: usize,
        magnitude: u32,
        granularity: u32,
    },

    #[error("malformed document: {0}")]
    Document(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
