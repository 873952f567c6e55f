use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("rank bound violated: {0}")]
    Bound(String),
    #[error("validation failed for law '{law}': {witness}")]
    Validation { law: String, witness: String },
    #[error("uniform property fails: {0}")]
    Uniform(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit status for this error: 3 for internal-consistency
    /// failures, 2 for everything a user can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) | Error::Decomposition(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
