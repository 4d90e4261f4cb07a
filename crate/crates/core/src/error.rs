use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph order {0} exceeds the supported maximum of 16")]
    OrderTooLarge(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("{what} out of range: {value} (allowed {allowed})")]
    OutOfRange {
        what: &'static str,
        value: String,
        allowed: &'static str,
    },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("unsupported averaging from type {from} to type {to}")]
    UnsupportedAveraging { from: String, to: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn out_of_range<T: std::fmt::Display>(
    what: &'static str,
    value: T,
    allowed: &'static str,
) -> Error {
    Error::OutOfRange {
        what,
        value: value.to_string(),
        allowed,
    }
}
