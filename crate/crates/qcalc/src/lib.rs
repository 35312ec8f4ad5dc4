//! q-integers, q-factorials and Gaussian binomials; the multiplicative
//! identities they satisfy under the Frobenius q |-> q^p; and the q-divided
//! power operator gamma(x) = phi(x)/[p]_q - delta(x) with its stability
//! identities.
//!
//! Everything is verified in Z[q] (or Z[t] with q = t^p for statements one
//! root level deep) by exact polynomial arithmetic; a failed exact division
//! is an error or a panic, never silently truncated.  Cofactors that the
//! theory asserts to be units of Z_p[[q-1]] are certified by evaluating at
//! q = 1 and checking the value is coprime to p, which suffices because an
//! element of that local ring is a unit exactly when its constant term is.

pub mod error;
pub mod gamma;
pub mod lemmas;
pub mod ratgcd;
pub mod table;

pub use error::QcalcError;
pub use gamma::QModel;
pub use lemmas::{
    q_power_divisibility, verify_floor_factorial, verify_frobenius_factorial,
    FloorFactorialCert, FrobeniusFactorialCert, NonzerodivisorCheck, QPowerCertificate,
};
pub use ratgcd::{rat_coprime, rat_divmod, rat_extended_gcd};
pub use table::{
    embed_root, frobenius_q, q_binomial, q_factorial, q_int, q_int_in, q_vars, t_vars,
    QFactorialTable,
};
