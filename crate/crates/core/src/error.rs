use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("geometry: {0}")]
    Geometry(String),
    #[error("special function: {0}")]
    SpecialFunction(String),
    #[error("not a fundamental discriminant: {0}")]
    Discriminant(i64),
    #[error("arithmetic: {0}")]
    Arithmetic(String),
    #[error("invalid measure: {0}")]
    Measure(String),
    #[error("transport: {0}")]
    Transport(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
