use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed label {label:?}: {reason}")]
    MalformedLabel { label: String, reason: String },

    #[error("q = {0} is not a prime power")]
    NotPrimePower(BigInt),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("input coefficient exceeds {max_digits} decimal digits")]
    CoefficientTooLarge { max_digits: usize },

    #[error("not a q-Weil polynomial: {0}")]
    NotWeil(String),

    #[error("input refused for eigenvalue analysis: {0}")]
    Unsupported(String),

    #[error("splitting field out of desk scale: {0}")]
    OutOfScale(String),

    #[error("factor recombination budget exceeded after {0} subsets")]
    RecombinationBudget(u64),

    #[error("precision budget exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("invalid argument: {0}")]
    InvalidInput(String),

    #[error("zero element has no multiplicative order")]
    ZeroElement,

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
