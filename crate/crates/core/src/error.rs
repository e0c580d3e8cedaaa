use thiserror::Error;

use crate::monomial::MAX_PAIRS;

/// Everything that can go wrong while building or transforming elements.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u32),
    #[error("{0} generator pairs requested, at most {MAX_PAIRS} are supported")]
    TooManyPairs(usize),
    #[error("context mismatch: (p={0}, m={1}) vs (p={2}, m={3})")]
    ContextMismatch(u32, usize, u32, usize),
    #[error("refusing to raise an element with exterior factors to the power {0}")]
    ExteriorPower(u64),
    #[error("matrix is not square")]
    NonSquare,
    #[error("division is not exact")]
    InexactDivision,
    #[error("exterior generators are not allowed here")]
    ExteriorContent,
    #[error("division by zero")]
    DivisionByZero,
    #[error("substitution image of {0} has the wrong degree parity")]
    ParityViolation(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("Milnor index {0} is inadmissible in degree {1}")]
    Inadmissible(String, u32),
    #[error("element is not in the span of the invariant basis")]
    NotInSpan,
    #[error("invariant basis is linearly dependent in degree {0}")]
    DependentBasis(u32),
    #[error("matrix is singular mod {0}")]
    Singular(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("element uses variables of the invariant block")]
    TouchesBlock,
    #[error("non-integral exponent: {0}")]
    NonIntegralExponent(String),
    #[error("denominator divisible by p: {0}")]
    NonInvertible(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
