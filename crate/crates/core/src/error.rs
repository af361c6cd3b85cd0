use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("operands belong to different number fields")]
    FieldMismatch,
    #[error("division by zero")]
    ZeroDivision,
    #[error("root hint did not converge: {0}")]
    RootNotConverged(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("operation requires a real field")]
    NonRealField,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("five points do not determine a unique conic")]
    AmbiguousConic,
    #[error("division leaves a nonzero remainder")]
    InexactDivision,
    #[error("no solution: {0}")]
    NoSolution(String),
    /// Numerical separation failed at the current working precision.
    #[error("ambiguous at {digits} digits: {what}")]
    NeedPrecision { digits: u32, what: String },
    #[error("self-check failed: {0}")]
    SelfCheck(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
