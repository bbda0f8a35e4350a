use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input lies outside what the library handles (e.g. Sylow 2-subgroup too large).
    #[error("unsupported scope: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// Degree pattern or sign analysis does not identify a Klein-four block.
    #[error("classification failed: {0}")]
    Classification(String),
    #[error("ambiguous input: {0}")]
    Ambiguous(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("group order exceeds bound {0}")]
    OrderBound(usize),
    /// Something that theory guarantees did not happen.
    #[error("structural failure: {0}")]
    Structural(String),
    #[error(transparent)]
    Cyc(#[from] crate::exactnum::CycError),
}

pub type Result<T> = std::result::Result<T, Error>;
