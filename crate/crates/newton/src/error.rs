//! Error type shared by the Newton modules.

use algebra_core::AlgebraError;

/// Failures of the Newton pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NewtonError {
    /// A face polynomial has roots outside `Q` that the algorithm must follow.
    #[error(
        "ground field insufficient: face {face} has face polynomial {poly} with irrational roots"
    )]
    GroundFieldInsufficient { face: String, poly: String },
    /// The recursion went deeper than the configured guard.
    #[error("depth guard exceeded (max_depth = {0})")]
    DepthGuardExceeded(usize),
    /// Some generator does not vanish at the origin.
    #[error("trivial ideal: generator {0} is a unit")]
    TrivialIdeal(String),
    /// The operation needs an ideal of finite codimension.
    #[error("ideal is not of finite codimension")]
    NotFiniteCodim,
    /// The given face is not a face of the ideal's diagram.
    #[error("face mismatch: {0}")]
    FaceMismatch(String),
    /// Newton map data with `gcd(p, q) != 1` or a zero exponent.
    #[error("p = {0} and q = {1} are not coprime positive integers")]
    NotCoprime(u64, u64),
    /// Newton map with `μ = 0`.
    #[error("Newton map root must be nonzero")]
    ZeroMu,
    /// The region below the diagram is unbounded.
    #[error("unbounded region: diagram does not meet both axes")]
    UnboundedRegion,
    /// Two entries of a process imply contradictory trees.
    #[error("inconsistent process: {0}")]
    InconsistentProcess(String),
    /// Two independent computations of the same quantity disagree.
    #[error("cross-check failure: {0}")]
    CrossCheckFailure(String),
    /// A vertex id that is not in the tree.
    #[error("no vertex with id {0}")]
    UnknownVertex(usize),
    /// Malformed serialized input.
    #[error("malformed input: {0}")]
    Malformed(String),
    /// Error from the algebra layer.
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Result alias for the Newton modules.
pub type Result<T> = std::result::Result<T, NewtonError>;
