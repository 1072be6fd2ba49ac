use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Ragged tables, out-of-range ids and similar shape problems.
    #[error("malformed input: {0}")]
    Structure(String),
    #[error("*-semigroup laws violated: {0}")]
    Laws(String),
    #[error("not a Weyl pair: {0}")]
    NotWeylPair(String),
    #[error("not an atlas: {0}")]
    NotAtlas(String),
    #[error("not a coset: {0}")]
    NotCoset(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not certified: {0}")]
    NotCertified(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
