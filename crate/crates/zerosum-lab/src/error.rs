use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group factor: every cyclic factor must be an integer >= 2")]
    InvalidFactor,
    #[error("group order {0} exceeds the 2^31 guard")]
    GroupTooLarge(u128),
    #[error("residue vector has {got} coordinates, group has {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("weight family {0} is empty")]
    EmptyWeightSet(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("group mismatch: {0}")]
    GroupMismatch(String),
    #[error("invalid subsequence length {m} for sequence of length {len}")]
    InvalidLength { m: usize, len: usize },
    #[error("search cap {cap} exceeded; constant is at least {lower_bound}")]
    SearchCapExceeded { cap: usize, lower_bound: u64 },
    #[error("time limit exceeded; constant is at least {lower_bound}")]
    TimeLimitExceeded { lower_bound: u64 },
    #[error("group is not a p-group")]
    NotPGroup,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no closed form applies to this group")]
    NoClosedForm,
    #[error("group algebra moduli differ: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("exponents {0} and {1} are congruent mod p")]
    CongruentExponents(u64, u64),
    #[error("exponent {0} vanishes mod p")]
    ZeroExponentModP(u64),
    #[error("too many exponents: r = {r} exceeds p - 1 = {max}")]
    TooManyExponents { r: usize, max: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
