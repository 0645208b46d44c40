use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("slope {slope} is below the threshold N = {threshold}")]
    BelowThreshold { slope: String, threshold: i64 },
}

pub type Result<T> = std::result::Result<T, Error>;
