use thiserror::Error;

/// Failure modes shared by every calculator in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller supplied something outside the operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured size limit would be exceeded.
    #[error("resource cap exceeded: {what} would reach {requested}, cap is {cap}")]
    ResourceCap { what: &'static str, requested: u128, cap: u128 },

    /// An internal consistency check failed. Seeing this means a bug or a
    /// counterexample to one of the checked statements.
    #[error("internal contradiction: {0}")]
    Contradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
