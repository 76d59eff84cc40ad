use alloc::string::String;

/// Errors raised by the toolkit's fallible operations.
///
/// Property violations (non-commuting generators, failed gadget checks and
/// the like) are reported as data, not through this type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("index {index} out of range for {len} qubits")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("resource guard: {what} ({size} exceeds limit {limit})")]
    ResourceLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("construction error: {0}")]
    Construction(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("threshold exceeded: p = {p} is not below p_T = {p_threshold}")]
    ThresholdExceeded { p: f64, p_threshold: f64 },
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
