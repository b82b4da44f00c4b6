use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("degree {degree} exceeds the limit {limit}")]
    DegreeTooLarge { degree: usize, limit: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("not cataloged: {0}")]
    NotCataloged(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("incompatible presentation: {0}")]
    IncompatiblePresentation(String),
    #[error("mismatched structure: {0}")]
    MismatchedStructure(String),
    #[error("unsupported sum: {0}")]
    UnsupportedSum(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("wrong presentation: {0}")]
    WrongPresentation(String),
    #[error("exchange image is not an involution")]
    NotInvolution,
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}
