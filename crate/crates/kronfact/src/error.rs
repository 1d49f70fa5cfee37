//! Error type shared across the crate.

use thiserror::Error;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a documented precondition (out-of-range index,
    /// incompatible sizes, non-finite value, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The all-zero pattern was passed to an operation that requires at
    /// least one entry. Factor recovery is ill-defined for it, so it is
    /// rejected everywhere instead of being reported factorizable.
    #[error("empty pattern: factorization requires at least one nonzero entry")]
    EmptyPattern,

    /// A recovered factor failed its verification against the input.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// Power iteration did not reach the requested tolerance.
    #[error(
        "power iteration did not converge after {iterations} iterations \
         (sigma {sigma:.6e}, relative residual {residual:.6e})"
    )]
    NonConvergence {
        iterations: usize,
        sigma: f64,
        residual: f64,
    },

    /// Malformed input file; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
