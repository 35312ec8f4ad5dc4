//! Framed q-de Rham complexes at desk scale.
//!
//! A framed algebra fixes coordinates on a small polynomial or Laurent
//! algebra over the truncated base ring; each coordinate carries either
//! the standard framing (the generator itself) or a substituted unit
//! perturbation.  The q-derivations ∇_{q,s} act exactly in the framing
//! coordinates (X^n ↦ [n]_q·X^{n−1}) and assemble into a q-Koszul complex
//! whose specializations at q = 1 and q = ζ_p land in small chain rings
//! where Smith normal form reads off cohomology.
//!
//! Truncation policy: elements live in a degree window, products falling
//! outside are dropped, and every reported invariant passes the two-window
//! protocol — computed on the requested window and on a strictly larger
//! one, kept only where the runs agree — so window artifacts are discarded
//! rather than reported.  The comparison checks (crystalline reduction
//! against an independently built classical oracle, Hodge–Tate and Cartier
//! rank tables against the twisted Frobenius enumeration, framing
//! independence) certify isomorphism types of cohomology only, never the
//! canonical maps themselves.

mod algebra;
mod checks;
mod classical;
mod cohomology;
mod complex;
mod error;
mod specialize;

pub use algebra::{AlgElem, FramedAlgebra, Framing};
pub use checks::{
    cartier_check, crystalline_reduction_check, framing_independence_check,
    hodge_tate_check, CartierEntry, CartierReport, CrystallineReport, FramingReport,
    FramingRow, HodgeTateReport, CANONICAL_MAP_NOTE,
};
pub use cohomology::{
    cohomology_invariants, graded_invariants, total_invariants, InvariantFactors,
    StableInvariants,
};
pub use complex::{build_complex, KoszulComplex};
pub use error::DerhamError;
pub use specialize::{specialize, SpecComplex, SpecTarget};
