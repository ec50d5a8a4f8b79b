//! Library-wide error type.

use thiserror::Error;

/// Errors produced by model construction, numerics, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// Incompatible shapes passed to an operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Cholesky factorization failed for every jitter in the schedule.
    #[error("singular matrix: Cholesky failed up to jitter {max_jitter:e}")]
    Singular { max_jitter: f64 },

    /// An API contract was violated by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// Invalid configuration, detected at construction time.
    #[error("configuration error: {0}")]
    Config(String),

    /// A non-finite value appeared where a finite one is required.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Malformed input file.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
