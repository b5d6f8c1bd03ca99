use thiserror::Error;

use crate::poly::Support;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("{what} limit exceeded: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },

    #[error("polynomial is not NNS: monomial {0} has a positive coefficient")]
    NotNns(Support),

    #[error("variable index {index} out of range 1..={n_vars}")]
    IndexOutOfRange { index: usize, n_vars: usize },

    #[error("malformed support: {0}")]
    MalformedSupport(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("duplicate entry on line {line}: {what}")]
    Duplicate { line: usize, what: String },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("polynomial is not within the signed support: {0}")]
    NotWithin(String),

    #[error("extension set is not exact for its base support")]
    NotExact,

    #[error("level {level} out of range 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("degree {0} exceeds 2")]
    DegreeTooHigh(usize),

    #[error("LP is {0}")]
    Unsolved(&'static str),

    #[error("certificate recheck failed: {0}")]
    CertificateRecheck(String),

    #[error("cutting-plane iteration cap {0} exceeded")]
    IterationCap(usize),

    #[error("time limit exceeded")]
    TimeLimit,

    #[error("empty set")]
    EmptySet,

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
