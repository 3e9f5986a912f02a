use crate::ring::RingId;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingId, RingId),
    #[error("{0} is not an element of {1}")]
    NotInRing(String, RingId),
    #[error("{0} is not a unit")]
    NotUnit(String),
    #[error("integer overflow in ring arithmetic")]
    Overflow,
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("vertex {0} listed twice")]
    DuplicateVertex(usize),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("malformed edge {0}-{1}: need u < v")]
    BadEdge(usize, usize),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not cyclotomic")]
    NotCyclotomic,
    #[error("A + 2I is not positive semidefinite")]
    NotPsd,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unknown name: {0}")]
    UnknownName(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("invalid config: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
