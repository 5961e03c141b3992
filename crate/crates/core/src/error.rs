use alloc::string::String;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("not divisible")]
    NotDivisible,
    #[error("matrix is not square")]
    NotSquare,
    #[error("entries of a row do not share one degree")]
    NonHomogeneous,
    #[error("index {index} out of range for {len} hyperplanes")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("zero linear form")]
    ZeroForm,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("fields do not match")]
    FieldMismatch,
    #[error("hyperplane already belongs to the arrangement")]
    AlreadyPresent,
    #[error("derivation {index} is not in D(A)")]
    NotLogarithmic { index: usize },
    #[error("arrangement is not free")]
    NotFree,
    #[error("arrangement is free")]
    Free,
    #[error("expected {expected} derivations, got {got}")]
    WrongCount { expected: usize, got: usize },
    #[error("operation requires rank {expected}, arrangement has rank {got}")]
    WrongRank { expected: usize, got: usize },
    #[error("degree sum {got} differs from |A| = {expected}")]
    DegreeSum { expected: usize, got: usize },
    #[error("derivations are dependent (zero determinant)")]
    Dependent,
    #[error("determinant is not a constant multiple of Q(A)")]
    NotMultipleOfQ,
    #[error("not a sub-arrangement")]
    NotSubset,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
