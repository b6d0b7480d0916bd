//! Crate-wide error type.
//!
//! Every fallible operation reports one of these variants; the CLI maps
//! [`Error::is_usage`] errors to exit code 2 and failed property assertions
//! to exit code 1.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two operands live over different coefficient rings.
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),

    /// Two truncated series of different order were combined; truncation
    /// orders never coerce implicitly.
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    /// Inversion of a non-unit was requested.
    #[error("not a unit: {0}")]
    NotAUnit(String),

    /// A rational function with zero denominator was constructed.
    #[error("zero denominator")]
    ZeroDenominator,

    /// The operation is not defined over the given ring.
    #[error("unsupported ring for {0}")]
    UnsupportedRing(&'static str),

    /// A modulus that must be prime is not.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// An operation that exchanges x and y needs Nx = Ny.
    #[error("non-square truncation: {0} x {1}")]
    NonSquareTruncation(usize, usize),

    /// Inputs over F_p with differing p.
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u64, u64),

    /// A truncation order is too small for the requested computation to be
    /// meaningful.
    #[error("bounds too small: {0}")]
    BoundsTooSmall(String),

    /// A rank requested for a decomposition disagrees with the observed rank.
    #[error("rank mismatch: requested {requested}, observed {observed}")]
    RankMismatch { requested: usize, observed: usize },

    /// A certificate references an index outside the available truncation.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    PrecViolated(String),

    /// The power-independence test requires V(0) = ±1.
    #[error("rationality hypothesis violated: V(0) = {0}, expected ±1")]
    RationalityViolated(String),

    /// U/V is a constant, so its powers are trivially dependent.
    #[error("U/V is constant")]
    ConstantRatio,

    /// An exact division failed.
    #[error("not divisible: {0}")]
    NotDivisible(String),

    /// An enumeration or exponent-table index is out of its domain.
    #[error("bad index: {0}")]
    BadIndex(String),

    /// A homology window parameter is below the minimum size.
    #[error("bad window: {0}")]
    BadWindow(String),

    /// Unparseable textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Errors that indicate ill-formed input rather than a failed
    /// mathematical property. The CLI reports these as usage errors.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::NotDivisible(_) | Error::RankMismatch { .. })
    }
}
