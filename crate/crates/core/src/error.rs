use alloc::string::String;

/// Errors raised by the torsion engines and their input validation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("a root of unity of order {order} does not live in Q(zeta_{conductor}); enlarge the conductor to a multiple of {order}")]
    ConductorMismatch { order: u64, conductor: u64 },

    #[error("no free abelianization; phi undefined")]
    NoFreeAbelianization,

    #[error("twisted complex not acyclic - torsion undefined ({0})")]
    NotAcyclic(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
