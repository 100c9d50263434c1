use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("zero has no multiplicative inverse")]
    InversionOfZero,
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("entry ({row}, {col}) violates unitriangularity")]
    NotUnitriangular { row: usize, col: usize },
    #[error("index pair ({i}, {j}) out of range for dimension {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("invalid breakpoints: {0}")]
    InvalidBreakpoints(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("gcd({p}, {r}) != 1")]
    NotCoprime { p: u32, r: u64 },
    #[error("subgroup closure exceeded the size bound of {0} elements")]
    SizeLimit(usize),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
