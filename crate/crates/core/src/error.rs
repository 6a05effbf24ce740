use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid game: {0}")]
    Validation(String),
    #[error("outside function domain: {0}")]
    Domain(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("no fixpoint after {0} iterations")]
    NonConvergence(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
