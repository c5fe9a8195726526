use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unsupported gauge group SU({0}); only SU(2) and SU(3) are available")]
    UnsupportedGroup(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension {0} exceeds the supported maximum")]
    DimensionTooLarge(usize),
    #[error("operator has complex entries but a real representation was requested")]
    NotReal,
}
