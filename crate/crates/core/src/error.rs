use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The value (or ket) is a zero divisor: one idempotent component vanishes.
    #[error("null cone: {0}")]
    NullCone(String),

    /// A quantum number, argument or parameter lies outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// The quadrature grid is malformed.
    #[error("grid error: {0}")]
    Grid(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
