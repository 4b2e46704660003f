use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DcaError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("empty result: {0}")]
    EmptyResult(String),
    #[error("empty effective domain")]
    EmptyDomain,
    #[error("point {point:?} lies outside the window")]
    OutsideWindow { point: Vec<i64> },
    #[error("invalid window: {0}")]
    InvalidWindow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("function has a non-integer value {0} at {1:?}")]
    NonInteger(String, Vec<i64>),
    #[error("point {0:?} is not in the effective domain")]
    NotInDomain(Vec<i64>),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("premise fails: {0}")]
    Premise(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("search inconclusive at radius {radius}: value bracket [{lower}, {upper}]")]
    Inconclusive { radius: i64, lower: String, upper: String },
    #[error("generation budget exhausted: {0}")]
    Generation(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, DcaError>;

pub(crate) fn same_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(DcaError::DimensionMismatch { expected, found })
    }
}
