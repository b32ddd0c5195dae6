use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("modulus is reducible over GF({0})")]
    Reducible(u64),
    #[error("bad modulus: {0}")]
    BadModulus(String),
    #[error("field of order {0} is too large")]
    FieldTooLarge(String),
    #[error("zero has no multiplicative order")]
    ZeroElement,
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("cannot factor {0} within the trial-division cap")]
    FactorTooLarge(u64),
    #[error("matrix is singular")]
    Singular,
    #[error("unsupported group kind: {0}")]
    UnsupportedKind(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("automorphism order {0} is divisible by p")]
    OrderNotCoprime(u64),
    #[error("element is not an involution")]
    NotInvolution,
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("scale too large for realization: {0}")]
    ScaleTooLarge(String),
    #[error("invalid class descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("h is even, the class is covered elsewhere")]
    HEven,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
