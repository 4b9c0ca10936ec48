use thiserror::Error;

/// Errors raised for malformed inputs or violated preconditions.
///
/// A certificate that simply fails to verify is not an error; that is reported
/// through [`crate::Verdict`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("{what} index {index} out of range (len {len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("size cap exceeded: {0}")]
    CapExceeded(String),
    #[error("internal consistency error: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn check_index(what: &'static str, index: usize, len: usize) -> Result<()> {
    if index < len {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { what, index, len })
    }
}
