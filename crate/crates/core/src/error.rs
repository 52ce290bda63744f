use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("elements belong to different generator contexts")]
    ContextMismatch,
    #[error("cannot add terms carrying (2pi)^-{left} and (2pi)^-{right}")]
    UnitMismatch { left: i32, right: i32 },
    #[error("derivation image of {generator} is not homogeneous of degree {expected}")]
    NonHomogeneousImage { generator: String, expected: usize },
    #[error("basis index {index} is not in the subalgebra")]
    NotInSubalgebra { index: usize },
    #[error("operands live over different Lie algebras")]
    AlgebraMismatch,
    #[error("expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("Pfaffian needs an even matrix size, got {0}")]
    OddDimension(usize),
    #[error("the Lie algebra carries no matrix realization")]
    MissingMatrices,
    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("unsupported setup: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}
