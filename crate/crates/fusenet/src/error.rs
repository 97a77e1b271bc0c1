//! Crate-wide error type.
//!
//! The same classification is exposed across the C ABI, so the variants map
//! onto stable discriminants there: invalid argument, resource limit,
//! internal invariant violation, and I/O.

use thiserror::Error;

/// Errors produced by lattice construction, decoding, and the scan engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Caller-supplied parameter is outside the supported domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An exhaustive search exceeded its configured budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    /// An internal invariant failed; indicates a construction bug.
    #[error("internal error: {0}")]
    Internal(String),
    /// Filesystem or serialization failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Shorthand for [`Error::InvalidArgument`] with a formatted message.
pub fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

/// Shorthand for [`Error::Internal`] with a formatted message.
pub fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
