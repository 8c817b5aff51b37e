//! Error type shared across the toolkit.

use thiserror::Error;

/// Errors produced by model construction, encoding, solving and benchmarking.
#[derive(Debug, Error)]
pub enum Error {
    /// An assignment or spin sequence does not match the model dimension.
    #[error("dimension mismatch: expected {expected} variables, got {actual}")]
    Dimension { expected: usize, actual: usize },

    /// A parameter is outside its valid range (negative penalty weight, zero runs, ...).
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A value violates a domain invariant (non-binary bit, non-unit spin, negative queue, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested computation exceeds a configured resource cap.
    #[error("resource cap exceeded: {0}")]
    Resource(String),

    /// A document failed to parse or validate.
    #[error("document error: {0}")]
    Document(String),

    /// A quantity is mathematically undefined for the given inputs (e.g. TTS at p = 0).
    #[error("undefined result: {0}")]
    Undefined(String),
}

pub type Result<T> = std::result::Result<T, Error>;
