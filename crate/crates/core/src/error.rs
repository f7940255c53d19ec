use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by the matrix core, the mean solvers and the verification layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric: asymmetry {asymmetry:e} exceeds tolerance {tolerance:e}")]
    NotSymmetric { asymmetry: f64, tolerance: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    NotDefinite { min_eigenvalue: f64 },

    #[error("{method} did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("power mean exponent must satisfy 0 < |t| <= 1, got {0}")]
    InvalidT(f64),

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid positive map: {0}")]
    InvalidMap(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn dims(expected: usize, found: usize) -> Self {
        Error::DimMismatch { expected, found }
    }
}
