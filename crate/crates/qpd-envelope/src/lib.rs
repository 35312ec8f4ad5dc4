//! q-divided-power envelopes over the truncated base ring.
//!
//! The envelope of the one-variable (or r-variable) surjection is modelled
//! on its basis of divided symbols e_i = prod_s Y_s^(i_s) / [floor(i_s)]_q!
//! indexed by exponents in (N[1/p^K])^r up to a degree bound.  Products,
//! Frobenius twists, and the Nygaard filtration are computed through exact
//! integer polynomial arithmetic: every divisibility the theory promises is
//! performed by `exact_div` and certified, never assumed.
//!
//! The Nygaard audit ([`QPDModule::nygaard_verify`]) checks, per basis
//! exponent, that the Frobenius image of the level-n generator is exactly
//! divisible by [p]_q^n, that the quotient survives modulo [p]_q precisely
//! when the floor sum is at most n (with a unit certificate at t = 1), and
//! that the surviving degrees coincide with an independently enumerated
//! conjugate-filtration subgrid.

mod error;
mod module;
mod nygaard;

pub use error::EnvelopeError;
pub use module::{kunneth_product, QPDElem, QPDModule};
pub use nygaard::{NygaardGenerator, NygaardReport, NygaardRow};
