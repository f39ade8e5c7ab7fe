use thiserror::Error;

/// Errors raised by the analyses in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("constraint violated: {equation} (residual {residual})")]
    ConstraintViolation { equation: String, residual: String },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("span vector {0} does not have zero entry sum")]
    SpanNotTraceFree(usize),

    #[error("span vectors are linearly dependent")]
    SpanDependent,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("configuration is not Einstein: residual {residual:e} exceeds {tol:e}")]
    NotEinstein { residual: f64, tol: f64 },

    #[error("no Einstein solution found; best residual {best_residual:e}")]
    NoSolutionFound { best_residual: f64 },

    #[error("at least three base factors are required, got {0}")]
    MRequiresAtLeastThree(usize),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("point is not on the simplex: {0}")]
    NotOnSimplex(String),

    #[error("pairing |{pairing}| exceeds squared norm {norm_sq}")]
    PairingOutOfRange { pairing: String, norm_sq: String },

    #[error("newton iteration did not converge after {iterations} steps (residual {residual_norm:e})")]
    MaxIterationsExceeded {
        iterations: usize,
        last_iterate: Vec<f64>,
        residual_norm: f64,
    },

    #[error("jacobian is singular")]
    SingularJacobian,

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("schema error: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
