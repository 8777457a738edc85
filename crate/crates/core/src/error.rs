use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("malformed schema in cell ({row}, {col}): {reason}")]
    MalformedSchema {
        row: String,
        col: String,
        reason: String,
    },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("{module} was built at bound {built}, but degree {requested} was requested")]
    BoundExceeded {
        module: String,
        built: u32,
        requested: u32,
    },

    #[error("algebra mismatch: right algebra `{left}` does not match left algebra `{right}`")]
    AlgebraMismatch { left: String, right: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
