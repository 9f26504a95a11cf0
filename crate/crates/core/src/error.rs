use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-range caller input.
    #[error("input error: {0}")]
    Input(String),
    #[error("dimension error: {0}")]
    Dimension(String),
    /// The reduction modulo a prime is not defined or not faithful.
    #[error("bad prime: {0}")]
    BadPrime(String),
    /// A geometric construction did not have the required shape.
    #[error("construction error: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
