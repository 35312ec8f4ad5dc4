//! The divided [p]_q-th power operator gamma(x) = phi(x)/[p]_q - delta(x) on
//! the polynomial model Z[q] of the q-de Rham base, with its additive and
//! multiplicative stability identities.

use std::sync::Arc;

use base_arith::IntPoly;
use num_bigint::BigInt;

use crate::error::QcalcError;
use crate::table::{frobenius_q, q_int_in, q_vars};

/// Z[q] with the delta-ring structure determined by phi(q) = q^p.  All
/// operations are exact; no truncation is involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QModel {
    p: u64,
    vars: Arc<Vec<String>>,
}

impl QModel {
    pub fn new(p: u64) -> Self {
        assert!(p >= 2 && (2..p).all(|d| p % d != 0), "p must be prime");
        QModel { p, vars: q_vars() }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn zero(&self) -> IntPoly {
        IntPoly::zero(self.vars.clone())
    }

    pub fn one(&self) -> IntPoly {
        IntPoly::one(self.vars.clone())
    }

    pub fn from_int(&self, v: i64) -> IntPoly {
        IntPoly::from_int(self.vars.clone(), v)
    }

    pub fn q(&self) -> IntPoly {
        IntPoly::var(self.vars.clone(), 0)
    }

    pub fn q_minus_one(&self) -> IntPoly {
        self.q().sub(&self.one())
    }

    /// [p]_q = 1 + q + ... + q^(p-1).
    pub fn p_analog(&self) -> IntPoly {
        q_int_in(&self.vars, self.p)
    }

    /// phi(f)(q) = f(q^p).
    pub fn phi(&self, f: &IntPoly) -> IntPoly {
        frobenius_q(f, self.p)
    }

    /// delta(f) = (phi(f) - f^p)/p; the division is exact on all of Z[q].
    pub fn delta(&self, f: &IntPoly) -> IntPoly {
        let diff = self.phi(f).sub(&f.pow(self.p as u32));
        diff.div_int_exact(&BigInt::from(self.p))
            .expect("phi(f) - f^p is divisible by p")
    }

    /// Whether f admits a q-divided power, i.e. [p]_q divides phi(f).
    pub fn admits_gamma(&self, f: &IntPoly) -> bool {
        self.phi(f).exact_div(&self.p_analog()).is_ok()
    }

    /// gamma(f) = phi(f)/[p]_q - delta(f).
    pub fn gamma(&self, f: &IntPoly) -> Result<IntPoly, QcalcError> {
        let quotient = self
            .phi(f)
            .exact_div(&self.p_analog())
            .map_err(|rem| QcalcError::NotDivisible {
                context: "gamma",
                remainder: rem.to_string(),
            })?;
        Ok(quotient.sub(&self.delta(f)))
    }

    /// gamma(x + y) = gamma(x) + gamma(y) + ((x+y)^p - x^p - y^p)/p,
    /// verified exactly.
    pub fn gamma_sum_identity(&self, x: &IntPoly, y: &IntPoly) -> Result<bool, QcalcError> {
        let lhs = self.gamma(&x.add(y))?;
        let mixed = x
            .add(y)
            .pow(self.p as u32)
            .sub(&x.pow(self.p as u32))
            .sub(&y.pow(self.p as u32))
            .div_int_exact(&BigInt::from(self.p))
            .expect("(x+y)^p - x^p - y^p is divisible by p");
        let rhs = self.gamma(x)?.add(&self.gamma(y)?).add(&mixed);
        Ok(lhs == rhs)
    }

    /// gamma(f x) = phi(f) gamma(x) - x^p delta(f), verified exactly.
    pub fn gamma_scale_identity(&self, f: &IntPoly, x: &IntPoly) -> Result<bool, QcalcError> {
        let lhs = self.gamma(&f.mul(x))?;
        let rhs = self
            .phi(f)
            .mul(&self.gamma(x)?)
            .sub(&x.pow(self.p as u32).mul(&self.delta(f)));
        Ok(lhs == rhs)
    }
}
