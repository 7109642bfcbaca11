use thiserror::Error;

/// Failures that stop an operation. Checks that merely fail are reported in
/// the report structs, not here.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size guard exceeded: {what} (limit {limit})")]
    GuardExceeded { what: String, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("pivot magnitude 2^{pivot_log2:.1} fell below 2^-{floor_bits}; rerun with higher precision")]
    InsufficientPrecision { pivot_log2: f64, floor_bits: u32 },

    #[error("singular linear system")]
    Singular,

    #[error("linear program is {0}")]
    LpStatus(&'static str),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn guard(what: impl Into<String>, limit: u64) -> Error {
    Error::GuardExceeded {
        what: what.into(),
        limit,
    }
}
