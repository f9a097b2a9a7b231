use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("origami is not connected")]
    Disconnected,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("family {family} is not defined for genus {genus}")]
    IncompatibleGenus { family: String, genus: usize },
    #[error("invalid construction choice: {0}")]
    InvalidChoice(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("orbit exceeded the limit of {0} members")]
    LimitExceeded(usize),
    #[error("word does not stabilize the origami")]
    NotStabilizing,
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
