use thiserror::Error;

/// Errors raised by the exact, oracle and simulation routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the operation's domain (n = 0, i > n, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The request is well-formed but exceeds a configured size bound.
    #[error("capacity exceeded: {what} = {requested} > limit {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// Two sequences that must have equal length do not.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// The closed-form deck polynomial is only valid for n >= 4.
    #[error("deck size {0} is below the closed-form range (n >= 4); use exhaustive enumeration")]
    BelowClosedFormRange(usize),

    /// A series identity that must hold exactly did not; always an implementation bug.
    #[error("series invariant violated: {0}")]
    SeriesInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn check_capacity(what: &'static str, requested: usize, limit: usize) -> Result<()> {
    if requested > limit {
        Err(Error::Capacity {
            what,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
