use thiserror::Error;

/// Errors shared across the workbench.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    /// A deletion set was applied to a word of a different universe.
    #[error("universe mismatch: word length {word_len}, deletion universe {universe}")]
    UniverseMismatch { word_len: usize, universe: usize },

    /// An index fell outside the domain of a position map or query range.
    #[error("index {index} out of domain [1, {domain}]")]
    OutOfDomain { index: usize, domain: usize },

    /// A parameter failed validation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A brute-force enumeration would exceed the enforced size limits.
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    /// A generator matrix without full row rank cannot be systematicized.
    #[error("generator matrix is rank-deficient (rank {rank}, expected {expected})")]
    RankDeficient { rank: usize, expected: usize },

    /// A decoder was handed a word too short to query.
    #[error("received word too short: length {len}, need at least {need}")]
    WordTooShort { len: usize, need: usize },

    /// Failure parsing a text format (polynomials, keys, configs).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
