use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group spec: field `{field}`: {message}")]
    InvalidSpec { field: String, message: String },

    #[error("empty generator list")]
    EmptyGenerators,

    #[error("group closure exceeds the order cap of {cap}")]
    OrderCapExceeded { cap: usize },

    #[error("group is not a nonabelian simple group: {0}")]
    NotSimple(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("too many orbits for exhaustive enumeration: {count} (limit {limit})")]
    TooManyOrbits { count: usize, limit: usize },

    /// Raised when two routes that must agree do not. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("cache: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn spec(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::InvalidSpec {
            field: field.into(),
            message: message.into(),
        }
    }
}
