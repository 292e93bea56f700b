use std::path::PathBuf;

/// Errors raised by the library. [`Error::exit_code`] maps them onto the CLI
/// exit codes (2 for invalid input, 3 for numerical failure).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("curve is not embedded: {0}")]
    NotEmbedded(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point ({x}, {y}) lies outside the form domain")]
    DomainExit { x: f64, y: f64 },
    #[error("contact condition violated: {0}")]
    NotContact(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("projection is not injective: {0}")]
    NonInjectiveProjection(String),
    #[error("projection is not generic: {0}")]
    NonGeneric(String),
    #[error("crossing height ambiguity: {0}")]
    CrossingAmbiguity(String),
    #[error("target {target} outside the attainable range ({low}, {high})")]
    OutOfRange { target: f64, low: f64, high: f64 },
    #[error("root bracketing failed: {0}")]
    Bracketing(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonGeneric(_)
            | Error::CrossingAmbiguity(_)
            | Error::Bracketing(_)
            | Error::OutOfRange { .. } => 3,
            _ => 2,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}
