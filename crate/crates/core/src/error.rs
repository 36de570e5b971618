use thiserror::Error;

/// Failures reported by the exact engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: gamma function singular at {0}")]
    Pole(String),
    #[error("rank mismatch: expected {expected} entries, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("invalid highest weight for SO({group}): {reason}")]
    InvalidWeight { group: usize, reason: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{0} is not contained in {1}")]
    NotContained(String, String),
    #[error("no standard intertwining operator: sigma is not self-dual")]
    NoIntertwiner,
    #[error("lambda = {0} is not a reducibility point")]
    NotReducible(String),
    #[error("not unitarizable: {0}")]
    NotUnitarizable(String),
    #[error("not F-picture-realizable: {0}")]
    NotFourierRealizable(String),
    #[error("case not covered: {0}")]
    NotCovered(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
