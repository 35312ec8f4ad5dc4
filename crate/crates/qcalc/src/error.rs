use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcalcError {
    /// An exact polynomial division that the theory requires (or that the
    /// caller requested) left a nonzero remainder.
    #[error("exact division failed in {context}: remainder {remainder}")]
    NotDivisible { context: &'static str, remainder: String },
    /// A cofactor that must be a unit of Z_p[[q-1]] has constant term
    /// divisible by p.
    #[error("unit certificate failed: value {value} at q=1 is divisible by p={p}")]
    NonUnit { value: BigInt, p: u64 },
}
