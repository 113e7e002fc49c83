//! Shared error type for the library.
//!
//! The CLI maps these onto process exit codes: input and parse problems
//! exit with 2, resource limits with 3, verification failures with 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    InvalidInput(String),

    #[error("not a monoid: {0}")]
    NotAMonoid(String),

    #[error("resource limit exceeded at degree {degree}: {reached} simplices (budget {budget})")]
    Resource {
        degree: usize,
        reached: usize,
        budget: usize,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
