use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A jump of the path is not a point of the partition sequence.
    #[error("jump at t = {time} is not accessible by the partition sequence")]
    AccessibilityViolation { time: f64 },

    #[error("degenerate path: {0}")]
    DegeneratePath(String),

    /// A jump equal to -1 makes a product factor vanish.
    #[error("degenerate product: factor 1 + jump vanishes at t = {time}")]
    DegenerateProduct { time: f64 },

    #[error("not an evolution: distribution path touches 0 at t = {time}")]
    NotAnEvolution { time: f64 },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("invalid price path: {0}")]
    InvalidPrice(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("parse error at line {line}, field `{field}`: {message}")]
    Parse {
        line: usize,
        field: String,
        message: String,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
