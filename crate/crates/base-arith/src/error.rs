use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("modulus base {0} is not prime")]
    NonPrime(u64),
    #[error("precision parameters must be positive (got {0})")]
    ZeroPrecision(String),
    #[error("exact division failed; nonzero remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("{0}")]
    Unsupported(String),
}
