use thiserror::Error;

use crate::dsl::{EvalError, ParseError};

/// Errors raised while building or evaluating solution families.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("normalization constraint violated: {0}")]
    Normalization(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Eval(#[from] EvalError),
}

impl Error {
    /// True for failures that come from evaluating a function outside its
    /// domain, as opposed to a malformed configuration.
    pub fn is_domain(&self) -> bool {
        matches!(self, Error::Domain(_) | Error::Eval(_))
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
