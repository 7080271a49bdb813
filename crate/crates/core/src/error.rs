use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live in incompatible rings or have mismatched shapes.
    #[error("structural error: {0}")]
    Structural(String),
    /// Division by zero and friends.
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    /// The input lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A parameter violates a stated admissibility condition.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// Specialising or evaluating hit a zero denominator.
    #[error("evaluation error: {0}")]
    Evaluation(String),
    /// Text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// A machine-checked property failed.
    #[error("verification error: {0}")]
    Verification(String),
    /// An identity that must hold by construction failed; this is a bug.
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
