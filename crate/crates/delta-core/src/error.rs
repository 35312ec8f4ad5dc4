use thiserror::Error;

/// Errors from delta-ring operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeltaError {
    /// Applying `phi` or `delta` would need derivative variables beyond the
    /// configured depth bound of the free delta-ring.
    #[error("operation needs derivative depth {needed} but the ring was built with depth {depth}")]
    DepthExceeded { needed: usize, depth: usize },

    /// The p-adic precision of the base ring is too small for the requested
    /// operation (delta drops one power of p, so prec_p = 1 leaves nothing).
    #[error("p-adic precision {0} is too small: delta lands in precision {0} - 1")]
    PrecisionLoss(u64),

    /// A divided-power expression turned out to have a coefficient with
    /// negative p-valuation.  This would disprove the integrality theorem,
    /// so it is reported as a defect rather than silently rounded.
    #[error("non-integral coefficient {coeff} at monomial {monomial}")]
    NonIntegralCoefficient { monomial: String, coeff: String },
}
