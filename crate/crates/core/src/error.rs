use thiserror::Error;

/// Errors reported by library operations.
///
/// The variants line up with the exit codes of the command-line front end:
/// input problems, exceeded resource caps, violated preconditions of an
/// operation, and internal invariant breaches.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("resource cap exceeded: {what} is {actual}, cap is {cap}")]
    Resource {
        what: &'static str,
        actual: usize,
        cap: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant breached: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn check_cap(what: &'static str, actual: usize, cap: usize) -> Result<()> {
        if actual > cap {
            Err(Error::Resource { what, actual, cap })
        } else {
            Ok(())
        }
    }
}
