//! Error type shared by all core modules.

use alloc::string::String;

/// Errors produced by validation, solving, building and model emission.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Malformed input data (bad numeric cell, bad schema field, ...).
    #[error("parse error: {0}")]
    Parse(String),
    /// Structurally invalid data (duplicate names, wrong lengths, ...).
    #[error("schema error: {0}")]
    Schema(String),
    /// Data that parses but violates a documented invariant.
    #[error("validation error: {0}")]
    Validation(String),
    /// An operation was called outside its documented preconditions.
    #[error("contract violation: {0}")]
    Contract(String),
    /// The problem instance has no feasible solution.
    #[error("infeasible: {0}")]
    Infeasible(String),
    /// An enumeration would exceed its configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// The requested combination of options is not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
    pub(crate) fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
    pub(crate) fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }
    pub(crate) fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }
    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
