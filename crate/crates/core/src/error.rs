use thiserror::Error;

use crate::exactlin::Field;

/// Errors raised by the algebra kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("invalid field descriptor: {0}")]
    InvalidField(String),

    /// Square matrix without inverse; carries the rank witness.
    #[error("matrix is not invertible (rank {rank} of {size})")]
    NotInvertible { rank: usize, size: usize },

    #[error("shape error at {location}: {message}")]
    Shape { location: String, message: String },

    #[error("index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    /// Operands live in different components; represents `H_p H_q = 0`.
    #[error("grade mismatch: {left} vs {right}")]
    GradeMismatch { left: usize, right: usize },

    #[error("left and right inverses disagree in grade {grade}")]
    OneSidedOnly { grade: usize },

    #[error("group-like violation: {0}")]
    GrouplikeViolation(String),

    /// Preconditions of a construction failed; lists the failing check ids.
    #[error("condition failure: {}", .failed.join(", "))]
    ConditionFailure { failed: Vec<String> },

    #[error("not an inverse-property loop: witness pair ({x}, {y}) fails {law}")]
    NotIpLoop { x: usize, y: usize, law: &'static str },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn shape(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Shape {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
