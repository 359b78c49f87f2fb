use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a unit of the dual integers (real part must be ±1)")]
    NotAUnit(String),

    #[error("requested depth {requested} exceeds the limit {limit}")]
    DepthLimit { requested: usize, limit: usize },

    #[error("form is not indefinite (discriminant {0} ≤ 0)")]
    NotIndefinite(String),

    #[error("discriminant {0} is a perfect square")]
    SquareDiscriminant(String),

    #[error("zero value encountered on the topograph at word {0:?}")]
    ZeroValueEncountered(String),

    #[error("river search gave up after {0} steps")]
    RiverSearchExhausted(usize),

    #[error("triple {0} does not satisfy its defining equation")]
    InvalidTriple(String),

    #[error("{0} is a perfect square; Pell's equation has no nontrivial solution")]
    SquareInput(u64),

    #[error("({a}, {b}, {c}) is not a Euclid triple: a + b ≠ c")]
    BadEuclidTriple { a: i64, b: i64, c: i64 },

    #[error("invalid continued fraction: {0}")]
    InvalidContinuedFraction(String),

    #[error("matrix has determinant {0}, expected ±1")]
    NotUnimodular(String),

    #[error("image of ξ under the matrix is the point at infinity")]
    DegenerateImage,

    #[error("invalid path word {0:?}: letters must be L or R")]
    InvalidWord(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}
