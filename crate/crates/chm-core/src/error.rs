use alloc::string::String;
use core::fmt;

/// Errors raised by the exact and numeric routines of this crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A precondition on an argument was violated.
    Domain(String),
    /// The common cyclotomic order exceeds [`crate::exactnum::MAX_ORDER`].
    OrderOverflow(u64),
    /// A value that must be unimodular is not.
    NotUnimodular,
    /// Exact and floating-point values were mixed where that is not allowed.
    MixedMode,
    /// The operation needs exact inputs.
    NeedsExact,
    /// A polynomial that must be nonzero is identically zero.
    IdenticallyZero,
    /// A residue-map lookup fell outside the table.
    Undefined(String),
    /// A shape not covered by a decision procedure.
    Unsupported(String),
    /// Float clustering could not separate the entries.
    AmbiguousClusters,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::OrderOverflow(n) => {
                write!(f, "order overflow: common order {n} exceeds {}; use float mode", crate::exactnum::MAX_ORDER)
            }
            Error::NotUnimodular => write!(f, "value is not unimodular within tolerance"),
            Error::MixedMode => write!(f, "exact and float values cannot be mixed here"),
            Error::NeedsExact => write!(f, "operation requires exact values"),
            Error::IdenticallyZero => write!(f, "polynomial is identically zero"),
            Error::Undefined(s) => write!(f, "undefined residue for symbol {s}"),
            Error::Unsupported(s) => write!(f, "unsupported shape: {s}"),
            Error::AmbiguousClusters => write!(f, "float entries do not cluster unambiguously"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: &str) -> Result<T> {
    Err(Error::Domain(String::from(msg)))
}

impl core::error::Error for Error {}
