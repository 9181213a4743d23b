//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or mismatched caller input (wrong vertex count, zero framing, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// The slope of the zero dimension vector is undefined.
    #[error("slope of the zero dimension vector is undefined")]
    UndefinedSlope,

    /// A stated precondition of an operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A polystable type whose local quiver would need a negative arrow count.
    #[error("infeasible polystable type: {0}")]
    InfeasibleType(String),

    /// An exact polynomial division left a remainder or a non-integer quotient.
    #[error("division is not exact: {0}")]
    Divisibility(String),

    /// A quantity that a theorem guarantees failed to hold; always a bug or a
    /// misread input, never a legitimate answer.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    /// Quiver file syntax error, with 1-based line and column.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
