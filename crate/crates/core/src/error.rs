use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A length or width does not match the variable count.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: u64, found: u64 },

    /// An argument has the right shape but an unusable value.
    #[error("invalid value: {0}")]
    Value(String),

    /// The variable count is outside what the operation supports.
    #[error("{n} variables exceeds the supported range (cap {cap})")]
    Capacity { n: usize, cap: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A probability-one claim failed. Always an implementation bug.
    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn value(msg: impl Into<String>) -> Self {
        Error::Value(msg.into())
    }

    pub(crate) fn dimension(expected: impl TryInto<u64>, found: impl TryInto<u64>) -> Self {
        Error::Dimension {
            expected: expected.try_into().unwrap_or(u64::MAX),
            found: found.try_into().unwrap_or(u64::MAX),
        }
    }
}
