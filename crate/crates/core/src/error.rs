use thiserror::Error;

/// Errors raised by the engine.
///
/// `TheoremViolation` never fires on a correct implementation: every check
/// that raises it is an algebraic identity that must hold.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus {modulus:?} is reducible over GF({p})")]
    ReducibleModulus { modulus: Vec<u32>, p: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("target is not a power of the base element")]
    NotAPower,
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("group enumeration exceeded the cap of {0} elements")]
    GroupCapExceeded(usize),
    #[error("module dimension {dim} exceeds the cap of {cap}")]
    DimCapExceeded { dim: usize, cap: usize },
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("not a representation: {0}")]
    NotARepresentation(String),
    #[error("meataxe inconclusive after {0} attempts")]
    Inconclusive(usize),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
