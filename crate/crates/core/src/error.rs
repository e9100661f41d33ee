use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("extension degree {0} is outside 1..=4")]
    DegreeOutOfRange(u32),
    #[error("field of order {0} exceeds the supported bound of 256 elements")]
    FieldTooLarge(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("the two points are equal")]
    EqualPoints,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("vectors are linearly dependent")]
    LinearlyDependent,
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("operation is undefined for the zero form")]
    ZeroForm,
    #[error("the zero linear form does not define a hyperplane")]
    ZeroLinearForm,
    #[error("the point is not on the quadric")]
    PointNotOnQuadric,
    #[error("class {class} is inconsistent with rank {rank}")]
    InconsistentClassRank { class: String, rank: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("ambient space too large for enumeration: {0}")]
    AmbientTooLarge(String),
    #[error("code too large for exhaustive scan: {0}")]
    CodeTooLarge(String),
    #[error("the zero codeword has no minimality verdict")]
    ZeroCodeword,
    #[error("rank {rank} has the wrong parity for class {class}")]
    ParityMismatch { class: String, rank: usize },
    #[error("enumeration of {needed} items exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("{0} inadmissible containment violation(s)")]
    InadmissibleViolation(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
