use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} exceptional coefficients, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid (-1)-curve {class}: {reason}")]
    InvalidCurve { class: String, reason: String },

    #[error("unknown point `{0}`")]
    UnknownPoint(String),

    #[error("degenerate query: basepoint and seed are both `{0}`")]
    DegenerateQuery(String),

    #[error("invalid incidence model: {0}")]
    InvalidModel(String),

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
