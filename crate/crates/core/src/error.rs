//! Error type shared by every layer of the library.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("zeta arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("leading part undefined: degree {degree} exceeds {bound}")]
    DegreeAboveBound { degree: i64, bound: i64 },
    #[error("unknown root system {0}")]
    UnknownType(String),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("invalid node {0}")]
    InvalidNode(usize),
    #[error("{0}")]
    Precondition(String),
    #[error("invalid parameter system: {0}")]
    InvalidParameters(String),
    #[error("invalid fundamental domain: {0}")]
    InvalidDomain(String),
    #[error("projection onto the J-alcove did not terminate")]
    ProjectionDiverged,
    #[error("conjectural bound is not an integer (twice the value is {0})")]
    HalfIntegerBound(i64),
}

pub type Result<T> = std::result::Result<T, Error>;
