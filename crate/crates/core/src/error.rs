use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("{what} has size {size}, above the configured limit {limit}")]
    SizeGuard {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("generator index {index} out of range 1..={rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },

    #[error("invalid word: {0}")]
    InvalidWord(String),

    /// An operation that only makes sense in type A was called on another type.
    #[error("operation requires type A, got {0}")]
    NotTypeA(String),

    #[error("unsupported combination: {0}")]
    Unsupported(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("cache header mismatch: {0}")]
    CacheHeader(String),

    #[error("cache line {line}: {msg}")]
    CacheLine { line: usize, msg: String },

    #[error("syntax error in {item} at column {column}: {msg}")]
    Syntax {
        item: String,
        column: usize,
        msg: String,
    },

    #[error("invalid scenario: {0}")]
    Scenario(String),

    #[error("unbounded search: {0}")]
    Unbounded(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors raised by a configurable resource limit.
    pub fn is_resource_guard(&self) -> bool {
        matches!(self, Error::SizeGuard { .. })
    }
}
