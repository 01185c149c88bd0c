//! Error types shared across the crate.

use crate::game::AgentId;

/// Errors produced by game construction, verification, and solving.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A game or generator input violated a structural invariant.
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// A partition does not cover the expected agent set or overlaps.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    /// A control query violated a precondition (agent sets, goal arity, ...).
    #[error("invalid query: {0}")]
    InvalidQuery(String),

    /// An agent referenced by an operation is absent from a required set.
    #[error("agent {agent} not in {place}")]
    AgentMissing { agent: AgentId, place: &'static str },

    /// An exhaustive search was requested beyond its configured cap.
    #[error("{what} on {n} agents exceeds exhaustive cap {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    /// The requested generator variant does not exist.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// A solver produced a witness that failed re-verification.
    #[error("witness failed verification: {0}")]
    WitnessVerification(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
