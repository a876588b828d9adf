//! Error type shared by all engine modules.

use thiserror::Error;

/// Errors surfaced by the engine.
///
/// `InvalidArgument`, `DimensionMismatch`, `UnsupportedDimension` and
/// `NoGenerator` are caller errors (violated preconditions). An
/// `InvariantViolation` means the engine derived something that contradicts
/// a structural theorem it relies on; seeing one is a bug or corrupted
/// external data, never a consequence of well-formed input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("unsupported dimension {dim}: classification ceiling is {max}")]
    UnsupportedDimension { dim: u32, max: u32 },

    #[error("no polynomial generator in degree {0}: degrees of the form 2^k - 1 carry none")]
    NoGenerator(u32),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
