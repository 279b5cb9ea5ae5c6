use std::fmt;

/// Errors surfaced by the classification library.
///
/// Domain-violation style errors (`InvalidInput`) cover precondition failures
/// that callers may reasonably hit (bad `(p,q)`, non-monotone vectors);
/// the remaining variants are specific failure modes named by the operations
/// that produce them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the inputs failed (message says which).
    InvalidInput(String),
    /// A negative continued fraction hit a zero intermediate denominator.
    DivisionByZero,
    /// No interval form exists for a standard basis vector; the claimed
    /// embedding is not a genuine vertex basis.
    NoInterval(usize),
    /// A P/SF family constraint or proviso failed (message names it).
    ConstraintViolation(String),
    /// The triple product of curve classes vanishes.
    DegenerateClass,
    /// Surface-slope surgery data is not of prism type.
    NotPrism(String),
    /// The torsion-coefficient minimization did not stabilize.
    NonConvergence,
    /// An internal invariant failed; indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::DivisionByZero => write!(f, "division by zero in continued fraction"),
            Error::NoInterval(j) => write!(f, "no interval form for basis vector v_{j}"),
            Error::ConstraintViolation(m) => write!(f, "constraint violation: {m}"),
            Error::DegenerateClass => write!(f, "degenerate curve classes: triple product is zero"),
            Error::NotPrism(m) => write!(f, "not a prism surgery: {m}"),
            Error::NonConvergence => write!(f, "torsion minimization did not stabilize"),
            Error::Internal(m) => write!(f, "internal invariant failure: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
