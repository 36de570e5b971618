use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("n must be at least {min}, got {found}")]
    Rank { min: usize, found: usize },
    #[error("not in SO0(n+1,1): form defect {0:e}")]
    NotInGroup(f64),
    #[error("singular configuration: {0}")]
    Singular(String),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
}

pub type Result<T> = std::result::Result<T, NumericError>;
