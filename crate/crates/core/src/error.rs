//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A stated precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The operation is not defined for this input kind (e.g. enumerating a
    /// continuous law).
    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// The instance exceeds the enumeration limit of an exact routine.
    #[error("instance too large: {what} = {got}, limit {limit}")]
    TooLarge {
        what: &'static str,
        got: u64,
        limit: u64,
    },

    /// The pinning partition function is exactly zero: no renewal
    /// configuration reaches the horizon.
    #[error("unreachable horizon: no renewal configuration reaches n = {n}")]
    UnreachableHorizon { n: usize },

    /// The endpoint weight vanishes on the whole parity cone.
    #[error("empty support: weight vanishes on the parity cone at n = {n}")]
    EmptySupport { n: usize },

    /// Every requested horizon was skipped, leaving nothing to estimate.
    #[error("empty design: {0}")]
    EmptyDesign(String),

    /// Invalid run configuration.
    #[error("config error: {0}")]
    Config(String),

    /// A replica task failed; the index identifies the offending stream.
    #[error("replica {replica} failed: {source}")]
    Replica {
        replica: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
