use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("invalid twist k={k} for rank {r}: gcd(k, r) must be 1")]
    InvalidTwist { k: i64, r: usize },
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("quiver has a directed cycle")]
    CyclicQuiver,
    #[error("vertex map is not a bijection: {0}")]
    NotBijective(String),
    #[error("invalid twisted complex: {0}")]
    InvalidComplex(String),
    #[error("not a cocycle")]
    NotACocycle,
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
