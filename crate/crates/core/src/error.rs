use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid order {0}: must be at least 1")]
    InvalidOrder(usize),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("operation table is not a heap: {0}")]
    NotAHeap(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("coefficient mismatch: {0}")]
    CoefficientMismatch(String),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("table of size {0} is too large")]
    TooLarge(usize),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid site: {0}")]
    InvalidSite(String),
    #[error("inadmissible decoration: {0}")]
    Inadmissible(String),
    #[error("empty presentation")]
    EmptyPresentation,
    #[error("count does not fit in 64 bits")]
    CountOverflow,
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
