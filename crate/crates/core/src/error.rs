use thiserror::Error;

/// Errors raised anywhere in the kernel, sequence, algebra and audit layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not invertible")]
    NotInvertible,
    #[error("operands belong to different rings")]
    DescriptorMismatch,
    #[error("characteristic {r} divides {n}")]
    CharDividesN { r: u64, n: u64 },
    #[error("discriminant is zero")]
    ZeroDiscriminant,
    #[error("ring is not a field")]
    NotAField,
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("value cannot be mapped into the target ring: {0}")]
    ReductionUndefined(String),
    #[error("operation requires degree {expected}, algebra has degree {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("elements belong to different symbol algebras")]
    AlgebraMismatch,
    #[error("field too small: {0}")]
    FieldTooSmall(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unbound index `{0}`")]
    UnboundIndex(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
