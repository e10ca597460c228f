use thiserror::Error;

use crate::algebra::ValidationReport;

/// Errors raised across the library. The CLI maps each variant to an exit code.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Operands live in different rings, contexts or algebras, or have the wrong shape.
    #[error("structural error: {0}")]
    Structural(String),
    /// The operation is undefined for this input (non-unit inversion, zero polynomial degree, ...).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation failed: {0}")]
    Validation(ValidationReport),
    #[error("not an order w.r.t. this basis: {0}")]
    NotAnOrder(String),
    #[error("resource guard: {what} requires {required}, limit is {limit} (use --force to override)")]
    ResourceGuard {
        what: String,
        required: String,
        limit: String,
    },
    /// An identity that must hold by construction failed.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn unsupported(msg: impl Into<String>) -> Error {
    Error::Unsupported(msg.into())
}
