use thiserror::Error;

/// Errors raised by the algebraic engines and the catalog layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("element does not belong to the ring: {0}")]
    RingMismatch(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("map does not respect the relation {0}")]
    RelationNotRespected(String),
    #[error("nilpotency test exceeded the cap of {0} powers")]
    NilpotencyCap(u32),
    #[error("resolution did not terminate within {0} steps")]
    ResolutionCap(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("group order {order} exceeds the cap {cap}")]
    GroupTooLarge { order: usize, cap: usize },
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("pair is not central: {0}")]
    NotCentral(String),
    #[error("representation is not faithful")]
    NotFaithful,
    #[error("missing data: {0}")]
    MissingData(String),
    #[error("cross-check mismatch: {0}")]
    CrossCheck(String),
    #[error("ill-formed expression: {0}")]
    InvalidExpr(String),
    #[error("presentation is not of H-space shape: {0}")]
    NotHSpaceShape(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
