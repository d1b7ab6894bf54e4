//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the string-net library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A structural invariant failed to hold.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A slice diagram has a layer whose input does not match the previous output.
    #[error("diagram layer {layer}: {message}")]
    Diagram { layer: usize, message: String },

    /// A computation would exceed the configured size cap.
    #[error("size cap exceeded: {needed} basis elements requested, cap is {cap}")]
    SizeCap { needed: u128, cap: u128 },

    /// Malformed input data.
    #[error("parse error: {0}")]
    Parse(String),

    /// Input data that parsed but failed validation.
    #[error("validation failed: {}", .0.join("; "))]
    Validation(Vec<String>),
}

/// Shorthand result type.
pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
