use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field order {0} is not prime")]
    CompositeOrder(u32),
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),
    #[error("index {index} out of range for a set of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("data has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("data is indexed by {found}, expected {expected}")]
    RoleMismatch {
        expected: &'static str,
        found: &'static str,
    },
    #[error("Bolker condition fails: {0}")]
    BolkerFailure(String),
    #[error("normal operator is singular")]
    SingularOperator,
    #[error("complex has {found} members, expected {expected}")]
    WrongCardinality { expected: usize, found: usize },
    #[error("hyperplanes {0} and {1} are not distinct parallel hyperplanes")]
    NotParallel(usize, usize),
    #[error("complex is admissible")]
    Admissible,
    #[error("complex is inadmissible")]
    Inadmissible,
    #[error("data is not in the range of the restricted transform (line {line} disagrees)")]
    InconsistentData { line: usize },
    #[error("construction rejected: {0}")]
    InvalidConstruction(String),
    #[error("{0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("integer overflow computing {0}")]
    Overflow(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("oracle disagreement: {0}")]
    OracleDisagreement(String),
}
