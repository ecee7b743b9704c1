use thiserror::Error;

/// Errors raised by the intersection-theory engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ambient: {0}")]
    InvalidAmbient(String),

    #[error("factor index {index} out of range for an ambient with {factors} factors")]
    IndexOutOfRange { index: usize, factors: usize },

    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("expected {expected} entries, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid rank: {0}")]
    InvalidRank(String),

    #[error("invalid complete intersection: {0}")]
    InvalidCompleteIntersection(String),

    #[error("invalid polarization: {0}")]
    InvalidPolarization(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("exponential requires a class with zero degree-0 part, found {0}")]
    NotNilpotent(String),

    #[error("not a K3 family: {0}")]
    NotK3(String),

    #[error("genus {0} is out of range: constructions start at g = 8; the small genus cases are covered by [PSY]")]
    GenusOutOfRange(i64),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("cannot parse {what} from {token:?}")]
    Parse { what: &'static str, token: String },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
