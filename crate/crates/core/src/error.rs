use thiserror::Error;

/// Errors raised by the algebra layer.
///
/// Most variants are structural: they flag inputs that do not live where the
/// caller claims (mismatched rings, out-of-range degrees) rather than
/// mathematical failures. Verification outcomes are reported through the
/// report types, never through this enum.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("degree {degree} exceeds truncation {trunc}")]
    DegreeOutOfRange { degree: u32, trunc: u32 },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("no image given for variable `{0}`")]
    MissingImage(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("division is not exact: {0}")]
    InexactDivision(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
