use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("invalid rank: {0}")]
    InvalidRank(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("truncation depth exhausted: {0}")]
    DepthExhausted(String),
    #[error("series is not weighted: {0}")]
    NotWeighted(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
