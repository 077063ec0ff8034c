use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("not in spin degree 2: {0}")]
    NotDegreeTwo(String),
    #[error("Q-antisymmetry violated: {0}")]
    NotAntisymmetric(String),
    #[error("parity error: {0}")]
    Parity(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
