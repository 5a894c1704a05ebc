use thiserror::Error;

use crate::scalar::Field;

/// Errors raised by the algebra routines and the command line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed field contexts: {0} and {1}")]
    FieldMismatch(Field, Field),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("characteristic {p} must be zero or greater than the working degree {degree}")]
    Characteristic { p: u64, degree: u64 },

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("substitution matrix has rank {rank}, full rank is {expected}")]
    RankDeficient { rank: usize, expected: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("internal invariant breach: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn ambient(msg: impl Into<String>) -> Self {
        Error::AmbientMismatch(msg.into())
    }

    /// Process exit code for this failure class: 1 parse, 2 precondition, 3 invariant breach.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 1,
            Error::Invariant(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
