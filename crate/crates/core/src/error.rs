use thiserror::Error;

/// Errors raised by the core operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Proximity data that does not describe a valid cluster.
    #[error("invalid cluster: {0}")]
    InvalidCluster(String),

    /// An operation was called with its precondition violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Unloading did not reach a consistent system within the step cap.
    #[error("unloading did not terminate within {cap} steps")]
    NonTermination { cap: usize },

    /// The oracle scanned every degree up to the cap without finding a curve.
    #[error("oracle inconclusive: no curve found up to degree {d_max}")]
    Inconclusive { d_max: u32, dims: Vec<usize> },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
