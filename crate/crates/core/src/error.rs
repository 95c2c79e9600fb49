use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse grouping used by the command-line front end to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    Parse,
    Validation,
    Precondition,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("kron requires at least one factor")]
    EmptyKron,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix contains non-finite entries")]
    NonFinite,
    #[error("invalid system shape: {0}")]
    InvalidShape(String),
    #[error("trace {trace} deviates from 1 by more than {tol}")]
    Trace { trace: f64, tol: f64 },
    #[error("hermiticity defect {defect} exceeds {tol}")]
    Hermiticity { defect: f64, tol: f64 },
    #[error("minimum eigenvalue {min_eigenvalue} below -{tol}")]
    Negativity { min_eigenvalue: f64, tol: f64 },
    #[error("{what} index {index} out of range (must be below {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },
    #[error("site {site} has dimension {dim}, expected a qubit")]
    NotQubit { site: usize, dim: usize },
    #[error("unsupported shape for this operation: {0}")]
    UnsupportedShape(String),
    #[error("state is not of maximally-disordered form: {0}")]
    NotMds(String),
    #[error("invalid probabilities: {0}")]
    InvalidProbabilities(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("detector is not monotone in the mixing weight: {0}")]
    NonMonotone(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::Parse(_) | Error::Json(_) => ErrorCategory::Parse,
            Error::Io(_) => ErrorCategory::Parse,
            Error::NotSquare { .. }
            | Error::DimensionMismatch { .. }
            | Error::NonFinite
            | Error::InvalidShape(_)
            | Error::Trace { .. }
            | Error::Hermiticity { .. }
            | Error::Negativity { .. }
            | Error::InvalidProbabilities(_) => ErrorCategory::Validation,
            Error::EmptyKron
            | Error::IndexOutOfRange { .. }
            | Error::NotQubit { .. }
            | Error::UnsupportedShape(_)
            | Error::NotMds(_)
            | Error::Precondition(_)
            | Error::NonMonotone(_) => ErrorCategory::Precondition,
            Error::Internal(_) => ErrorCategory::Internal,
        }
    }
}
