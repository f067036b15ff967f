use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MondrianError {
    #[error("k = {k} is not supported here (needs k >= {min})")]
    UnsupportedK { k: usize, min: usize },
    #[error("k = {k} exceeds the configured bound {max}")]
    KTooLarge { k: usize, max: usize },
    #[error("a denominator vanishes at the chosen root")]
    DenominatorVanishes,
    #[error("field elements live over different algebraic bases")]
    BaseMismatch,
    #[error("no real root yields a valid spiral partition for k = {k}")]
    NoValidRoot { k: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("certification failed: {0}")]
    CertificationFailure(String),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("no perturbation in the search window yields a valid non-congruent tiling")]
    NoValidCandidate,
    #[error("rescaling makes rectangles congruent (0-based pairs {pairs:?})")]
    CongruenceViolation { pairs: Vec<(usize, usize)> },
    #[error("extension produced congruent rectangles (0-based pairs {pairs:?})")]
    CongruentPairAfterExtension { pairs: Vec<(usize, usize)> },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("i/o failure: {0}")]
    IoFailure(String),
}

pub type Result<T> = std::result::Result<T, MondrianError>;

impl From<std::io::Error> for MondrianError {
    fn from(e: std::io::Error) -> Self {
        MondrianError::IoFailure(e.to_string())
    }
}
