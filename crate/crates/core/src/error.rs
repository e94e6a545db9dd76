use thiserror::Error;

/// Errors surfaced by the library. Internal arithmetic inconsistencies
/// (a non-exact division that must be exact) panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("malformed rational literal {0:?} (expected \"p/q\" or \"p\")")]
    MalformedRational(String),

    #[error("invalid stability: {0}")]
    InvalidStability(String),

    #[error("epsilon {epsilon} outside the admissible range (0, {bound})")]
    EpsilonOutOfRange { epsilon: String, bound: String },

    #[error("stability has empty stable locus (need 0 < theta_i < 1 for all i)")]
    TrivialStability,

    #[error("degree {degree} exceeds the cached maximum degree {cached}; extend the cache")]
    DegreeBeyondCache { degree: usize, cached: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("automorphism classification needs m > 2, got m = {0}")]
    ArityTooSmall(usize),

    #[error("cost guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("unknown stability preset {0:?}")]
    UnknownPreset(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
