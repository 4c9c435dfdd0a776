//! Error types shared across the crate.

use num_bigint::BigInt;
use thiserror::Error;

/// Errors from exact integer and polynomial arithmetic.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("non-exact polynomial division")]
    NonExactDivision,
    #[error("polynomial is not a perfect square")]
    NotASquare,
    #[error("factorization budget exhausted on composite {0}")]
    FactorizationTimeout(BigInt),
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeBudgetExceeded { degree: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(BigInt),
    #[error("operand must be nonzero")]
    ZeroOperand,
}

/// Errors from arithmetic in the quadratic CM rings.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("prime {0} does not split in this ring")]
    NotSplit(BigInt),
    #[error("argument is not coprime to the prime")]
    NotCoprime,
    #[error("{0} is not prime")]
    NotPrime(BigInt),
}

/// Errors from division-field tower construction.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("{0} is not an odd prime")]
    NotPrime(BigInt),
    #[error("bad reduction: {p} divides {modulus}")]
    BadReduction { p: BigInt, modulus: BigInt },
    #[error("no unique irreducible factor of degree {expected} (found degrees {found:?})")]
    FactorExtractionFailed { expected: usize, found: Vec<usize> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("irreducibility of degree-{degree} polynomial over {base} could not be certified")]
    CertificateUnavailable { degree: usize, base: &'static str },
    #[error("primitive element search failed")]
    PrimitiveElementFailed,
}

/// Errors from class-group data handling and the backend protocol.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invariant violation at line {line}: {msg}")]
    InvariantViolation { line: usize, msg: String },
    #[error("duplicate datum at line {line}: {msg}")]
    Duplicate { line: usize, msg: String },
    #[error("backend unavailable: {0}")]
    BackendUnavailable(String),
    #[error("backend error: {0}")]
    BackendError(String),
    #[error("negative relative rank: rank(L)={l} < rank(F)={f}")]
    NegativeRelativeRank { l: u32, f: u32 },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors from the rank engine.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RankError {
    #[error("no class-group data for any good prime")]
    NoData,
    #[error("{0} is not squarefree")]
    NotSquarefree(BigInt),
    #[error("{0} is not cubefree")]
    NotCubefree(BigInt),
    #[error("parameter must be positive")]
    NotPositive,
}

/// Errors from the constructive families.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("parameters hit the singular locus")]
    SingularParameters,
    #[error("bad reduction at p for this specialization")]
    BadReduction,
    #[error("prime {0} is in the wrong residue class for this family")]
    WrongResidueClass(BigInt),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
