use thiserror::Error;

use crate::numkernel::Natural;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code via [`Error::code`], which the
/// command-line front end passes through verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op} undefined at 0")]
    ZeroInput { op: &'static str },

    #[error("0^0 is an undefined form")]
    ZeroToZero,

    #[error("exponent {0} is too large to materialize")]
    ExponentTooLarge(Natural),

    #[error("division by zero")]
    DivisionByZero,

    #[error("cannot parse {input:?} as {what}")]
    Parse { input: String, what: &'static str },

    #[error("Lucas-Lehmer exponent must be at least 2, got {0}")]
    ExponentTooSmall(u64),

    #[error(
        "primality of {0} is outside the deterministic range (non-Mersenne input above 3.3e24)"
    )]
    PrimalityOutOfRange(Natural),

    #[error("sieve up to {limit} needs {bytes} bytes, above the {cap}-byte memory cap")]
    SieveMemory { limit: u64, bytes: u128, cap: u64 },

    #[error("enumeration limit {limit} exceeds the supported maximum {max}")]
    EnumerationLimit { limit: u64, max: u64 },

    #[error("enumeration strategies disagree up to {limit}: sieve found {sieve:?}, generator found {generator:?}")]
    StrategyDisagreement {
        limit: u64,
        sieve: Vec<Natural>,
        generator: Vec<Natural>,
    },

    #[error("2^{0} - 1 is composite, so the Euclid construction does not apply")]
    CompositeMersenne(u64),

    #[error("{0} is odd; expected an even input")]
    NotEven(Natural),

    #[error("{0} is even; expected an odd input")]
    NotOdd(Natural),

    #[error("{0} is not perfect")]
    NotPerfect(Natural),

    #[error("1 has no prime part to decompose")]
    UnitHasNoPrimePart,

    #[error("no prime has an odd exponent (the input is a perfect square)")]
    NoOddExponent,

    #[error("{count} primes have odd exponents; exactly one is required")]
    MultipleOddExponents { count: usize },

    #[error("invalid prime-power factorization: {0}")]
    InvalidFactorization(String),

    #[error("structural invariant violated: {0}")]
    StructureViolation(String),

    #[error("uniqueness monitor rejected m = {m}: already recorded for {existing}, now seen for {incoming}")]
    HornfeckViolation {
        m: Natural,
        existing: Natural,
        incoming: Natural,
    },

    #[error("certificate step {label:?} does not hold")]
    CertificateFailure { label: String },

    #[error("cutoffs must be strictly ascending and nonempty")]
    CutoffsNotAscending,

    #[error("partial sums decreased between cutoffs {from} and {to}")]
    MonotonicityViolation { from: u64, to: u64 },

    #[error("partial sum at cutoff {cutoff} is not below 4")]
    BoundViolation { cutoff: u64 },
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroInput { .. } => "ZERO_INPUT",
            Error::ZeroToZero => "ZERO_TO_ZERO",
            Error::ExponentTooLarge(_) => "EXPONENT_TOO_LARGE",
            Error::DivisionByZero => "DIVISION_BY_ZERO",
            Error::Parse { .. } => "PARSE",
            Error::ExponentTooSmall(_) => "EXPONENT_TOO_SMALL",
            Error::PrimalityOutOfRange(_) => "PRIMALITY_OUT_OF_RANGE",
            Error::SieveMemory { .. } => "SIEVE_MEMORY",
            Error::EnumerationLimit { .. } => "ENUMERATION_LIMIT",
            Error::StrategyDisagreement { .. } => "STRATEGY_DISAGREEMENT",
            Error::CompositeMersenne(_) => "COMPOSITE_MERSENNE",
            Error::NotEven(_) => "NOT_EVEN",
            Error::NotOdd(_) => "NOT_ODD",
            Error::NotPerfect(_) => "NOT_PERFECT",
            Error::UnitHasNoPrimePart => "UNIT_HAS_NO_PRIME_PART",
            Error::NoOddExponent => "NO_ODD_EXPONENT",
            Error::MultipleOddExponents { .. } => "MULTIPLE_ODD_EXPONENTS",
            Error::InvalidFactorization(_) => "INVALID_FACTORIZATION",
            Error::StructureViolation(_) => "STRUCTURE_VIOLATION",
            Error::HornfeckViolation { .. } => "HORNFECK_VIOLATION",
            Error::CertificateFailure { .. } => "CERTIFICATE_FAILURE",
            Error::CutoffsNotAscending => "CUTOFFS_NOT_ASCENDING",
            Error::MonotonicityViolation { .. } => "MONOTONICITY_VIOLATION",
            Error::BoundViolation { .. } => "BOUND_VIOLATION",
        }
    }
}
