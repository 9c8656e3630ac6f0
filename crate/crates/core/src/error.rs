use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Division by an exact zero of E.
    DivisionByZero,
    /// Two coefficients from different `ECtx` values were combined.
    ContextMismatch,
    /// Invalid field or tower parameters; the message names the offending value.
    InvalidParameter(String),
    /// The residue characteristic must be odd.
    EvenPrime(u64),
    /// Character data not usable for the requested operation.
    Character(String),
    /// A required field of the case parameters is missing or malformed.
    Schema(String),
    /// Module data violates a structural requirement (e.g. a non-invertible Frobenius).
    Structure(String),
    /// A case precondition of the classification was violated.
    Precondition(String),
    /// Construction produced inconsistent data; indicates a bug.
    Internal(String),
    /// Search bound exhausted (square roots, factor search).
    BoundExhausted(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DivisionByZero => write!(f, "division by zero in E"),
            Error::ContextMismatch => write!(f, "coefficients belong to different fields"),
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            Error::EvenPrime(p) => write!(f, "p = {p} rejected: p must be an odd prime"),
            Error::Character(m) => write!(f, "character error: {m}"),
            Error::Schema(m) => write!(f, "parameter schema: {m}"),
            Error::Structure(m) => write!(f, "module structure: {m}"),
            Error::Precondition(m) => write!(f, "case precondition violated: {m}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
            Error::BoundExhausted(m) => write!(f, "search bound exhausted: {m}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
