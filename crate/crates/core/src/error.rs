use thiserror::Error;

/// Malformed text input, with a byte (or item) position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        Self { position, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// The remainder is nonzero.
    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UmemuraError {
    #[error("Hankel matrix of size {size} needs entries a_0..a_{needed}, only {available} available")]
    InsufficientEntries { size: usize, needed: usize, available: usize },
    #[error("exact division failed while computing {what}")]
    NotDivisible { what: String },
    #[error("cache already holds a different sigma_{n}")]
    CacheConflict { n: usize },
}
