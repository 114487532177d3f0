//! Error type shared by the whole crate.

use thiserror::Error;

/// Everything that can go wrong when constructing groups, scanning them, or
/// running the structure machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The base of the modulus is not a prime number.
    #[error("{0} is not prime")]
    NonPrime(u32),

    /// The exponent of the modulus must be at least 1.
    #[error("exponent must be >= 1, got {0}")]
    BadExponent(u32),

    /// The modulus p^n exceeds the supported range.
    #[error("modulus {p}^{n} exceeds the supported bound 2^20")]
    Overflow { p: u32, n: u32 },

    /// A coordinate handed to the kernel embedding lies outside [0, p).
    #[error("coordinate {value} out of range [0, {bound})")]
    CoordinateOutOfRange { value: u64, bound: u64 },

    /// A set of elements that was promised to be a subgroup is not closed.
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    /// A scan was asked for with an empty constraint set.
    #[error("constraint set is empty")]
    EmptySet,

    /// An operation that needs a non-central element received a central one.
    #[error("central element not allowed here: {0}")]
    CentralElement(String),

    /// A slice index outside [0, p).
    #[error("slice index {ell} out of range [0, {p})")]
    EllOutOfRange { ell: u64, p: u32 },

    /// A pair operation received twice the same element.
    #[error("elements must be distinct")]
    EqualElements,

    /// The element is not supercommuting with the reference element.
    #[error("element is not supercommuting with the reference element")]
    NotSupercommuting,

    /// The two elements do not form a special pair with the first one
    /// carrying the minimal valuation profile.
    #[error("not a special pair: {0}")]
    NotSpecialPair(String),

    /// The pair commutes but not properly, so no witness construction applies.
    #[error("elements commute improperly")]
    ImproperlyCommuting,

    /// The element is outside the pseudocentralizer it was claimed to be in.
    #[error("element lies outside the pseudocentralizer")]
    NotInPseudocentralizer,

    /// An enumeration hit its configured budget.
    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    /// The group is too large for a dense Cayley table.
    #[error("group order {order} exceeds the table limit {limit}")]
    TooLarge { order: u64, limit: u64 },

    /// The generating-set normalization could not complete.  This indicates a
    /// violated structural assumption and should never fire on valid input.
    #[error("special generating set construction failed: {0}")]
    SpecializationFailed(String),

    /// Two objects built over different (p, n) parameters were mixed.
    #[error("group parameter mismatch: {0}")]
    ParamsMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;
