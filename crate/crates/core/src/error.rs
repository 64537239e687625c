use thiserror::Error;

use crate::engine::RunStats;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("at most {max} variables are supported, got {found}")]
    TooManyVariables { max: usize, found: usize },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("empty input set")]
    EmptySet,
    #[error("zero polynomial in input")]
    ZeroPolynomial,
    #[error("operation is undefined for the zero polynomial")]
    ZeroOperand,
    #[error("monomial {0} is already indexed")]
    DuplicateMonomial(String),
    #[error("monomial {0} is not indexed")]
    AbsentMonomial(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{family}-{n}: parameter out of range (need {min} <= n <= {max})")]
    FamilyParameter { family: String, n: usize, min: usize, max: usize },
    #[error("unknown benchmark family `{0}`")]
    UnknownFamily(String),
    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),
    #[error("unknown monomial order `{0}`")]
    UnknownOrder(String),
    #[error("unknown output kind `{0}`")]
    UnknownOutputKind(String),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("computation timed out")]
    Timeout { stats: Box<RunStats> },
}
