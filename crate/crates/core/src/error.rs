use thiserror::Error;

/// Which idempotent component(s) an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Components {
    pub e1: bool,
    pub e2: bool,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("ZeroDivisorError: {0}")]
    ZeroDivisor(String),
    #[error("BranchError: {0}")]
    Branch(String),
    #[error("PoleError: gamma pole in component(s) e1={}, e2={}", .0.e1, .0.e2)]
    Pole(Components),
    #[error("DomainError: {0}")]
    Domain(String),
    #[error("NonIntegerError: {0}")]
    NonInteger(String),
    #[error("PreconditionError: {0}")]
    Precondition(String),
    #[error("NonConvergence: {0}")]
    NonConvergence(String),
    #[error("StripError: {0}")]
    Strip(String),
    #[error("TruncationError: {0}")]
    Truncation(String),
}

impl Error {
    /// Short error class name, as reported by the command line front end.
    pub fn name(&self) -> &'static str {
        match self {
            Error::ZeroDivisor(_) => "ZeroDivisorError",
            Error::Branch(_) => "BranchError",
            Error::Pole(_) => "PoleError",
            Error::Domain(_) => "DomainError",
            Error::NonInteger(_) => "NonIntegerError",
            Error::Precondition(_) => "PreconditionError",
            Error::NonConvergence(_) => "NonConvergence",
            Error::Strip(_) => "StripError",
            Error::Truncation(_) => "TruncationError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
