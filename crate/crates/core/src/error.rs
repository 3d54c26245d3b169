use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An operation was called outside its domain (zero divisor, zero input, bad index).
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
    /// A required seed condition does not hold (e.g. exchange polynomials differ from
    /// their exchange Laurent polynomials).
    #[error("condition violated: {0}")]
    Condition(String),
    /// A mathematical rejection carrying a witness, e.g. a reducible exchange polynomial.
    #[error("rejected: {0}")]
    Rejected(String),
    /// Internal invariant broke; always an implementation bug.
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("i/o error: {0}")]
    Io(String),
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
