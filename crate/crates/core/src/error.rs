use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("group mismatch: `{left}` vs `{right}`")]
    GroupMismatch { left: String, right: String },

    #[error("{what}: {value} exceeds the bound {bound}")]
    BoundExceeded {
        what: &'static str,
        value: String,
        bound: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("group definition invalid at {location}: {message}")]
    GroupFile { location: String, message: String },

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("no polynomial of weighted degree <= {bound} reproduces the function: {detail}")]
    DegreeBound { bound: usize, detail: String },

    #[error("operator is not scalar: {0}")]
    NotScalar(String),

    #[error("rational fit failed for {key}: {detail}")]
    FitValidation { key: String, detail: String },

    #[error("coefficient of {key} diverges")]
    Divergent { key: String },

    #[error("sequence is not Cauchy: {0}")]
    NotCauchy(String),

    #[error("window invariant failed at r = {r}: {detail}")]
    Window { r: usize, detail: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn bound(what: &'static str, value: impl ToString, bound: impl ToString) -> Self {
        Error::BoundExceeded {
            what,
            value: value.to_string(),
            bound: bound.to_string(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
