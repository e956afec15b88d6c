//! Crate-wide error type.
//!
//! Every fallible operation returns [`Result`]. Errors fall into two camps:
//! inputs that violate a documented precondition ([`Error::Invalid`]) and
//! requests that exceed a hard size cap ([`Error::TooLarge`]). Both carry a
//! human-readable message naming the offending value.

use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates a documented precondition (bad symbol, wrong length,
    /// malformed text, inconsistent data).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Request exceeds a hard size cap (enumeration or simulation too large).
    #[error("size limit exceeded: {0}")]
    TooLarge(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for [`Error::Invalid`] from any displayable message.
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    /// Shorthand for [`Error::TooLarge`] from any displayable message.
    pub fn too_large(msg: impl Into<String>) -> Self {
        Error::TooLarge(msg.into())
    }
}
