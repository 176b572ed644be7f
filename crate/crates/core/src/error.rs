use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus polynomial is reducible over F_{0}")]
    Reducible(u32),
    #[error("invalid modulus polynomial: {0}")]
    BadModulus(String),
    #[error("ring order {0} exceeds the 2^20 table limit")]
    TooLarge(u64),
    #[error("residue rings require an odd prime, got p = 2")]
    EvenResidueRing,
    #[error("exponent must be positive (prime fields use exponent 1)")]
    BadExponent,
    #[error("not a unit")]
    NotAUnit,
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operation requires dimension {expected}, got {actual}")]
    UnsupportedDimension { expected: usize, actual: usize },
    #[error("value {value} out of range [0, {bound})")]
    OutOfRange { value: u64, bound: u64 },
    #[error("duplicate point {0:?}")]
    DuplicatePoint(Vec<u32>),
    #[error("invalid scalar {text:?}: {reason}")]
    InvalidScalar { text: String, reason: String },
    #[error("bound not stated for this input: {0}")]
    BoundNotStated(String),
    #[error("bound family {family} does not apply to a {kind} ambient")]
    WrongFamily {
        family: &'static str,
        kind: &'static str,
    },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed point-set file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
