//! Crate-wide error type.
//!
//! Operations reject invalid inputs rather than silently coercing them;
//! each variant names the violated hypothesis so callers (and the CLI) can
//! surface it verbatim.

use alloc::string::String;
use core::fmt;

/// Errors raised by the arithmetic layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// ℓ must be an odd prime; 2 (and composites) are rejected everywhere.
    InvalidPrime(u64),
    /// A discriminant that is not fundamental (or is 0/1).
    NotFundamental(i64),
    /// The prime ℓ does not split in the field: the totally ℓ-adic
    /// hypothesis fails.
    NotSplit { delta: i64, ell: u64 },
    /// Mixed ℓ-adic arithmetic between different primes.
    PrimeMismatch { left: u64, right: u64 },
    /// Input value is not a unit / not a principal unit where one is needed.
    NotAUnit(String),
    /// Quadratic non-residue passed to a square-root lift.
    NonResidue { a: String, ell: u64 },
    /// More ℓ-adic precision is required than was supplied.
    PrecisionShortfall { required: u32, available: u32 },
    /// An ideal asserted principal turned out not to be.
    NotPrincipal(String),
    /// Division by zero or a zero argument where nonzero is required.
    ZeroArgument,
    /// A homomorphism matrix fails the order relations of its groups.
    MalformedHom(String),
    /// A configured resource bound (discriminant size, period length) was
    /// exceeded.
    ResourceLimit(String),
    /// Malformed textual or structural input.
    Malformed(String),
    /// Two routes that must agree on stabilized data disagreed. Never
    /// resolved silently; this is a reportable failure.
    Inconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPrime(l) => write!(f, "ell = {l} is not an odd prime"),
            Error::NotFundamental(d) => write!(f, "{d} is not a fundamental discriminant"),
            Error::NotSplit { delta, ell } => write!(
                f,
                "ell = {ell} does not split in Q(sqrt {delta}): field is not totally ell-adic"
            ),
            Error::PrimeMismatch { left, right } => {
                write!(f, "mixed ell-adic arithmetic: {left} vs {right}")
            }
            Error::NotAUnit(s) => write!(f, "not a unit: {s}"),
            Error::NonResidue { a, ell } => {
                write!(f, "{a} is not a nonzero square modulo {ell}")
            }
            Error::PrecisionShortfall {
                required,
                available,
            } => write!(
                f,
                "precision shortfall: need ell^{required}, have ell^{available}"
            ),
            Error::NotPrincipal(s) => write!(f, "ideal is not principal: {s}"),
            Error::ZeroArgument => write!(f, "zero argument"),
            Error::MalformedHom(s) => write!(f, "malformed homomorphism: {s}"),
            Error::ResourceLimit(s) => write!(f, "resource bound exceeded: {s}"),
            Error::Malformed(s) => write!(f, "malformed input: {s}"),
            Error::Inconsistency(s) => write!(f, "internal consistency failure: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
