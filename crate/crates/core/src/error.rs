use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument escaped its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A growth function failed structural validation.
    #[error("invalid growth function: {0}")]
    InvalidBound(String),
    /// A run or report is missing required configuration.
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
