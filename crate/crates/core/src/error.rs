use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live over different base rings or variable counts")]
    BaseMismatch,
    #[error("invalid base ring: {0}")]
    InvalidBase(String),
    #[error("polynomial is not monic in the distinguished variable")]
    NotMonic,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("search bound {0} exceeded without a decision")]
    SearchBoundExceeded(u32),
    #[error("rank {0} is below 2: elementary factorization is not available in isotropic rank 1")]
    RankTooLow(usize),
    #[error("unsupported root system type: {0}")]
    UnsupportedType(String),
    #[error("unknown root {0:?}")]
    UnknownRoot(Vec<i64>),
    #[error("roots are proportional")]
    ProportionalRoots,
    #[error("{0} is not a unit of the base ring")]
    NotAUnit(String),
    #[error("matrix size {got} does not match the group model (expected {expected})")]
    SizeMismatch { expected: usize, got: usize },
    #[error("matrix is not in the group: {0}")]
    NotInGroup(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("descent budget exceeded: {0}")]
    DescentBudgetExceeded(String),
    #[error("covering data inconsistent: {0}")]
    CoveringInconsistent(String),
    #[error("not factored within budget ({0}); this is not a proof of non-membership")]
    NotFactored(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
