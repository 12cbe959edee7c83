use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument was outside the domain of the operation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A search or enumeration exceeded its configured budget. This is a
    /// distinct outcome from a verification failure: nothing was falsified,
    /// the computation was simply not allowed to finish.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// Two independent computation routes that must agree exactly did not.
    /// This always signals an implementation bug, never bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    /// An unknown output format was requested.
    #[error("unknown format: {0}")]
    UnknownFormat(String),

    /// A serialized table could not be parsed back.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
