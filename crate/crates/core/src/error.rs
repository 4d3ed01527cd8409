use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("set is empty")]
    EmptySet,
    #[error("duplicate element {0}")]
    DuplicateElement(u64),
    #[error("element {0} is not a positive integer")]
    NonPositiveElement(i128),
    #[error("cannot parse set element `{0}`")]
    Parse(String),
    #[error("{0} is not an element of the set")]
    ElementNotInSet(u64),
    #[error("{lo} does not divide {hi}")]
    NotDivisible { lo: u64, hi: u64 },
    #[error("set is not gcd closed: gcd({0}, {1}) = {2} is missing")]
    NotGcdClosed(u64, u64, u64),
    #[error("set is not factor closed")]
    NotFactorClosed,
    #[error("{element} has {count} greatest-type divisors (at most 2 supported)")]
    TooManyGtds { element: u64, count: usize },
    #[error("beta coefficient vanishes at index {0}")]
    ZeroBeta(usize),
    #[error("index {index} out of range for a set of size {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("matrix is singular (determinant {det})")]
    Singular { det: BigInt },
    #[error("divisor matrix is singular (determinant {det}); quotient method inapplicable")]
    SingularDivisor { det: BigInt },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("arithmetic overflow building {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
