use thiserror::Error;

/// Errors shared by the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A computation would materialize more data than the configured limit.
    #[error("work limit exceeded: needed {needed}, limit {limit}")]
    Capacity { needed: usize, limit: usize },

    /// A relation word or subset violates a construction invariant.
    #[error("invalid relation: {0}")]
    InvalidRelation(String),

    /// A complex is structurally malformed (shape mismatch, bad entries).
    #[error("structural error: {0}")]
    Structural(String),

    /// An operation was called outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A quadratic-only operation met a relation of size three or more.
    #[error("not quadratic: relation {0} has more than two points")]
    NotQuadratic(String),

    /// Series inversion requires a unit constant term.
    #[error("series inversion: constant term is not 1")]
    Inversion,

    /// Mirror-pair coefficients of a letter combination disagree.
    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),

    /// An internally inconsistent intermediate value (broken complex).
    #[error("internal consistency: {0}")]
    InternalConsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
