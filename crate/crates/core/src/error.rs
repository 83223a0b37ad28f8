use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant to an exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not effective: {0}")]
    NotEffective(String),
    #[error("instance too large: {what} exceeded the cap of {limit}")]
    ResourceCap { what: &'static str, limit: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for this error: 2 validation, 3 resource cap, 1 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceCap { .. } => 3,
            Error::Internal(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
