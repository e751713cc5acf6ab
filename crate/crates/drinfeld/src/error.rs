use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("elements live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("series is zero to its stated precision")]
    ZeroSeries,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("not a morphism: {0}")]
    NotAMorphism(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precision exceeded: {0}")]
    Precision(String),
    #[error("hypothesis (H) fails for a = {0}: torsion has dimension {1} < {2}")]
    TorsionNotRational(String, usize, usize),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
