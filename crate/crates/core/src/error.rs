//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// SBox table malformed: wrong length, out-of-range entry, bad literal.
    #[error("invalid sbox: {0}")]
    InvalidSbox(String),

    /// An inequality or point was used with the wrong number of variables.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// All-zero coefficient vectors do not describe a usable halfspace.
    #[error("degenerate inequality: all coefficients are zero")]
    DegenerateInequality,

    /// A configured resource budget (facets, sums, solver nodes/time) ran out.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A candidate pool cannot cover some impossible transition.
    #[error("infeasible: impossible transition {0} is not removed by any candidate")]
    Infeasible(String),

    /// An imported inequality system failed validation against the DDT.
    #[error("validation failed: {0}")]
    Validation(String),

    /// A text or JSON artifact could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
