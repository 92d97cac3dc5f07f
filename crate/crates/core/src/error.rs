use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element does not belong to {expected}: {reason}")]
    FamilyMismatch { expected: String, reason: String },

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("matrix is not invertible over {0}")]
    NotInvertible(String),

    #[error("{family} witness requires even n, got {n}; stabilize to n = {}", n + 1)]
    OddStabilization { family: String, n: usize },

    #[error("not compactly supported: {0}")]
    NotCompactlySupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),
}

pub type Result<T> = std::result::Result<T, Error>;
