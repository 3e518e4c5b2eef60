use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error in field `{field}`: {message}")]
    Parse { field: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    /// An enumeration or matching budget was exceeded.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("unsupported instance: {0}")]
    Unsupported(String),

    #[error("malformed circuit: {0}")]
    MalformedCircuit(String),

    #[error("failure profile mode mismatch: {0}")]
    ProfileMode(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
