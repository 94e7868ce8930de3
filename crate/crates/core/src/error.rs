use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("index {index} out of range for group of order {order}")]
    Range { index: u64, order: u64 },

    /// The request is well formed but exceeds a hard cap (e.g. the brute-force oracle).
    #[error("refused: {0}")]
    Refused(String),

    /// A set that is supposed to be k-zero-sum free is not.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error(
        "inconsistent bounds: lower {lower} from `{lower_source}` exceeds upper {upper} from `{upper_source}`"
    )]
    Inconsistent {
        lower: u64,
        lower_source: String,
        upper: u64,
        upper_source: String,
    },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
