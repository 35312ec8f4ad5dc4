//! Truncated p-typical Witt vectors W_m(R): ghost maps, universal structure
//! polynomials, Teichmüller lifts, V and F, δ, and the crystalline two-term
//! complexes whose cohomology gives weight-n syntomic invariants of finite
//! fields.

pub mod structure;
pub mod twist;
pub mod witt;

pub use structure::{structure_polys, StructurePolys};
pub use twist::{
    from_teichmuller_coordinates, no_nonzerodivisor_witness, tate_twist_invariants,
    teichmuller_coordinates, TateTwistReport, ZeroDivisorReport,
};
pub use witt::{WittError, WittRing, WittVec};
