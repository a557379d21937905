use thiserror::Error;

/// Errors raised by the library.
///
/// `InternalInconsistency` and `TheoremViolation` mean a computed object failed
/// a property that the mathematics guarantees; they indicate a bug, never bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p not prime: {0}")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus is reducible; factor {factor}")]
    ReducibleModulus { factor: String },
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("denominator is not invertible modulo {0}")]
    NotInvertible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("rank leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("coefficient ring mismatch")]
    RingMismatch,
    #[error("{0}")]
    Unsupported(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("extension field too small: {0}")]
    ExtensionTooSmall(String),
    #[error("mu table covers degree {have}, need {need}")]
    MuTableTooShallow { need: usize, have: usize },
    #[error("s = {s} is outside the convergence range ({range})")]
    ConvergenceRange { s: i64, range: &'static str },
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
