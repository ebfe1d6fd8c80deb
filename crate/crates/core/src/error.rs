use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured enumeration or size cap was exceeded. The payload names
    /// the cap and carries the partial count reached before giving up.
    #[error("cap exceeded: {what} (cap {cap}, reached {reached})")]
    CapExceeded {
        what: &'static str,
        cap: u64,
        reached: u64,
    },

    /// Sumset iteration stagnated before covering the space: the connection
    /// set generates a proper subgroup, so the action is reducible.
    #[error("connection set does not generate the space (stagnated at {covered} of {total} points)")]
    Stagnation { covered: u64, total: u64 },

    /// Two independent computations of the same quantity disagreed.
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
