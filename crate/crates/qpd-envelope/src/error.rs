use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    /// A product or Frobenius image left the finite slice of the basis kept
    /// in memory.
    #[error("exponent {exponent_num:?} exceeds the degree bound {bound_num} (numerators over p^K)")]
    DegreeOverflow { exponent_num: Vec<u64>, bound_num: u64 },
    /// An exact division required by the closed basis laws failed; this
    /// would falsify the integrality of the structure constants.
    #[error("exact division failed in {context}: remainder {remainder}")]
    NotDivisible { context: &'static str, remainder: String },
    /// Künneth product of modules over different base rings.
    #[error("modules lie over different base rings")]
    MixedBases,
}
