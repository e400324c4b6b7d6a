use thiserror::Error;

use crate::quadrature::Estimate;

/// Errors raised by the measurement engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid value: {0}")]
    Invalid(String),

    #[error("invalid integration bounds: {0}")]
    InvalidBounds(String),

    #[error("tolerance unmet: value {value} with error bound {error_bound:.3e} after {evaluations} evaluations", value = .0.value, error_bound = .0.error_bound, evaluations = .0.evaluations)]
    ToleranceUnmet(Estimate),

    #[error("size guard exceeded: {size} > {limit} ({what})")]
    SizeGuard {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ToleranceUnmet(_) => 2,
            Error::SizeGuard { .. } => 3,
            _ => 1,
        }
    }
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
