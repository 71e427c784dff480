use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("smith normal form entry exceeded {0} bits")]
    Overflow(u64),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("degree enumeration unbounded at {0}")]
    Unbounded(String),
    #[error("undetermined differential: {0}")]
    UndeterminedDifferential(String),
    #[error("extension ambiguity: {0}")]
    ExtensionAmbiguity(String),
    #[error("precision not stabilized: {0}")]
    NotStabilized(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("map not well defined: {0}")]
    IllDefined(String),
    #[error("window too small: {0}")]
    Window(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
