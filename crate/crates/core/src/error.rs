use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Division by a zero or non-monic polynomial.
    #[error("modulus error: {0}")]
    Modulus(String),
    /// An argument outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A path that does not run from the origin to the frame's far corner.
    #[error("frame error: {0}")]
    Frame(String),
    /// An operation applied to a path of the wrong class.
    #[error("class error: {0}")]
    Class(String),
}

pub type Result<T> = std::result::Result<T, Error>;
