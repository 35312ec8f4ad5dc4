//! Exact arithmetic foundations: sparse big-integer and big-rational
//! polynomials, the truncated q-deformation coefficient ring
//! ℤ[t]/(p^N, (t−1)^M) with q = t^{p^K}, finite chain rings, and valuation-
//! aware linear solvers. Everything is exact; nothing rounds.

pub mod base;
pub mod chain;
pub mod error;
pub mod linalg;
pub mod mpoly;
pub mod ring;

pub use base::{BaseElem, BaseRing};
pub use chain::{ChainElem, ChainKind, ChainRing};
pub use error::ArithError;
pub use linalg::{integer_invariant_factors, solve_local, solve_zmod, vp_int, vp_rat};
pub use mpoly::{int_to_json, varset, Coeff, IntPoly, MPoly, RatPoly};
pub use ring::{eval_poly, BigIntRing, DualRing, GfRing, PolyRing, RingOps, ZmodRing};
