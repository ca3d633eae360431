use thiserror::Error;

/// Errors raised by the algebra and its I/O surfaces.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The input lies outside the set the operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),
    /// An identity that must hold by construction failed numerically.
    #[error("internal error: {0}")]
    Internal(String),
    /// Shapes or types of the arguments do not fit together.
    #[error("contract violation: {0}")]
    Contract(String),
    /// A serialized matrix or tensor could not be decoded.
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
