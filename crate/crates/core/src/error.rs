use thiserror::Error;

/// Broad category of a failure, used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Validation,
    Resource,
    Defect,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{value} is not prime: divisible by {divisor}")]
    NotPrime { value: u64, divisor: u64 },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("domain mismatch: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("resource bound exceeded: {what} is {value}, limit {limit}")]
    Resource { what: &'static str, value: String, limit: String },

    #[error("internal consistency failure: {0}")]
    Defect(String),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Resource { .. } => ErrorKind::Resource,
            Error::Defect(_) => ErrorKind::Defect,
            _ => ErrorKind::Validation,
        }
    }

    pub(crate) fn resource(what: &'static str, value: impl ToString, limit: impl ToString) -> Self {
        Error::Resource { what, value: value.to_string(), limit: limit.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
