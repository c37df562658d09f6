use std::io;

use thiserror::Error;

/// Failure classes surfaced by the library. Each maps onto one CLI exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violates a documented precondition.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A formula left its domain of validity: overflow of an unstable mode,
    /// a violated `kd < pi/2` assumption, and the like.
    #[error("validity error: {0}")]
    Validity(String),

    /// Sampled data was non-finite.
    #[error("data error: {0}")]
    Data(String),

    /// The fixed-point iteration did not reach its tolerance.
    #[error("no convergence after {iterations} iterations (last residual {last_residual:e})")]
    Convergence {
        iterations: usize,
        last_residual: f64,
        history: Vec<f64>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn validity(msg: impl Into<String>) -> Self {
        Error::Validity(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    /// Process exit code for this error: 2 parameter, 3 numerical validity
    /// or non-convergence, 4 I/O. Data errors count as parameter errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parameter(_) | Error::Data(_) => 2,
            Error::Validity(_) | Error::Convergence { .. } => 3,
            Error::Io(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
