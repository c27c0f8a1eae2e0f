use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is singular")]
    Singular,

    #[error("no invertible {size}x{size} matrix after {attempts} draws; the random source looks broken")]
    RngExhausted { size: usize, attempts: usize },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("{location}: {message}")]
    PointFile { location: String, message: String },

    #[error("genericity check failed: {0}")]
    Genericity(String),

    #[error("unbounded region: {0}")]
    Unbounded(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
