//! The truncated coefficient ring A = ℤ[t] / (p^N, (t−1)^M) with the
//! distinguished deformation parameter q = t^{p^K}.
//!
//! Elements are stored in the (t−1)-adic basis: `coeffs[i]` is the
//! coefficient of (t−1)^i, canonically reduced into `[0, p^N)`. The depth K
//! exposes a p^K-th root of q, so q-analog identities can be checked one
//! Frobenius level below the visible variable. K = 0 means q = t.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Zero};

use crate::error::ArithError;
use crate::mpoly::{int_to_json, varset, IntPoly};
use crate::ring::is_prime_u64;

#[derive(Debug, PartialEq, Eq)]
struct BaseData {
    p: u64,
    prec_p: u32,
    prec_t: u32,
    root_depth: u32,
    pn: BigInt,
    /// q − 1 = (1 + (t−1))^{p^K} − 1 in the (t−1) basis, truncated.
    q_minus_one: Vec<BigInt>,
    tvar: Arc<Vec<String>>,
}

/// Shared handle on the ring parameters (p, N, M, K).
#[derive(Clone, Debug)]
pub struct BaseRing {
    data: Arc<BaseData>,
}

impl PartialEq for BaseRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.p == other.data.p
                && self.data.prec_p == other.data.prec_p
                && self.data.prec_t == other.data.prec_t
                && self.data.root_depth == other.data.root_depth)
    }
}
impl Eq for BaseRing {}

#[derive(Clone, PartialEq, Eq)]
pub struct BaseElem {
    ring: BaseRing,
    coeffs: Vec<BigInt>,
}

impl BaseRing {
    pub fn create(p: u64, prec_p: u32, prec_t: u32, root_depth: u32) -> Result<Self, ArithError> {
        if !is_prime_u64(p) {
            return Err(ArithError::NonPrime(p));
        }
        if prec_p == 0 {
            return Err(ArithError::ZeroPrecision("prec_p".into()));
        }
        if prec_t == 0 {
            return Err(ArithError::ZeroPrecision("prec_t".into()));
        }
        let pn = BigInt::from(p).pow(prec_p);
        let pk = BigInt::from(p).pow(root_depth);
        let mut q_minus_one = vec![BigInt::zero(); prec_t as usize];
        for (i, c) in q_minus_one.iter_mut().enumerate().skip(1) {
            let i_big = BigInt::from(i);
            if i_big <= pk {
                *c = binomial(pk.clone(), i_big).mod_floor(&pn);
            }
        }
        Ok(BaseRing {
            data: Arc::new(BaseData {
                p,
                prec_p,
                prec_t,
                root_depth,
                pn,
                q_minus_one,
                tvar: varset(vec!["t"]),
            }),
        })
    }

    pub fn p(&self) -> u64 {
        self.data.p
    }
    pub fn prec_p(&self) -> u32 {
        self.data.prec_p
    }
    pub fn prec_t(&self) -> u32 {
        self.data.prec_t
    }
    pub fn root_depth(&self) -> u32 {
        self.data.root_depth
    }
    pub fn p_big(&self) -> BigInt {
        BigInt::from(self.data.p)
    }
    pub fn pn(&self) -> &BigInt {
        &self.data.pn
    }
    pub fn tvar(&self) -> Arc<Vec<String>> {
        self.data.tvar.clone()
    }

    /// Same p, M, K at reduced p-adic precision.
    pub fn with_prec_p(&self, prec_p: u32) -> Result<Self, ArithError> {
        Self::create(self.data.p, prec_p, self.data.prec_t, self.data.root_depth)
    }

    pub fn elem(&self, mut coeffs: Vec<BigInt>) -> BaseElem {
        coeffs.resize(self.data.prec_t as usize, BigInt::zero());
        for c in &mut coeffs {
            *c = c.mod_floor(&self.data.pn);
        }
        BaseElem {
            ring: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> BaseElem {
        self.elem(vec![])
    }

    pub fn one(&self) -> BaseElem {
        self.elem(vec![BigInt::one()])
    }

    pub fn from_bigint(&self, n: &BigInt) -> BaseElem {
        self.elem(vec![n.clone()])
    }

    pub fn from_i64(&self, n: i64) -> BaseElem {
        self.from_bigint(&BigInt::from(n))
    }

    /// The visible variable t = 1 + (t−1).
    pub fn t(&self) -> BaseElem {
        self.elem(vec![BigInt::one(), BigInt::one()])
    }

    pub fn q(&self) -> BaseElem {
        self.one().add(&self.q_minus_one())
    }

    pub fn q_minus_one(&self) -> BaseElem {
        BaseElem {
            ring: self.clone(),
            coeffs: self.data.q_minus_one.clone(),
        }
    }

    /// Evaluate a univariate integer polynomial at t.
    pub fn from_t_poly(&self, f: &IntPoly) -> BaseElem {
        self.eval_univariate(f, &self.t())
    }

    /// Evaluate a univariate integer polynomial at q = t^{p^K}.
    pub fn from_q_poly(&self, f: &IntPoly) -> BaseElem {
        self.eval_univariate(f, &self.q())
    }

    fn eval_univariate(&self, f: &IntPoly, at: &BaseElem) -> BaseElem {
        assert_eq!(f.vars().len(), 1, "univariate polynomial expected");
        let deg = match f.degree_in(0) {
            None => return self.zero(),
            Some(d) => d,
        };
        let mut acc = self.zero();
        for d in (0..=deg).rev() {
            acc = acc.mul(at).add(&self.from_bigint(&f.coeff_of(&[d])));
        }
        acc
    }
}

impl BaseElem {
    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_ring(&self, other: &BaseElem) {
        assert!(self.ring == other.ring, "elements of different base rings");
    }

    pub fn add(&self, other: &BaseElem) -> BaseElem {
        self.check_ring(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b).mod_floor(self.ring.pn()))
            .collect();
        BaseElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> BaseElem {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| (-a).mod_floor(self.ring.pn()))
            .collect();
        BaseElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &BaseElem) -> BaseElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BaseElem) -> BaseElem {
        self.check_ring(other);
        let m = self.ring.prec_t() as usize;
        let mut coeffs = vec![BigInt::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= m {
                    break;
                }
                coeffs[i + j] += a * b;
            }
        }
        for c in &mut coeffs {
            *c = c.mod_floor(self.ring.pn());
        }
        BaseElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> BaseElem {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| (a * n).mod_floor(self.ring.pn()))
            .collect();
        BaseElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, e: u32) -> BaseElem {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Units are exactly the elements whose constant (t−1)-coefficient is a
    /// unit mod p^N: the rest of the expansion is nilpotent.
    pub fn is_unit(&self) -> bool {
        !(self.coeffs[0].clone() % self.ring.p_big()).is_zero()
    }

    pub fn inv(&self) -> Result<BaseElem, ArithError> {
        if !self.is_unit() {
            return Err(ArithError::NotAUnit(self.to_string()));
        }
        let egcd = self.coeffs[0].extended_gcd(self.ring.pn());
        let mut y = self.ring.from_bigint(&egcd.x);
        // Newton: y ← y(2 − xy) doubles the (t−1)-adic accuracy each step,
        // starting from an inverse of the constant term.
        let two = self.ring.from_i64(2);
        let mut steps = 0;
        while (1u64 << steps) < self.ring.prec_t() as u64 {
            steps += 1;
        }
        for _ in 0..steps {
            y = y.mul(&two.sub(&self.mul(&y)));
        }
        debug_assert!(self.mul(&y) == self.ring.one());
        Ok(y)
    }

    /// The Frobenius endomorphism t ↦ t^p.
    pub fn frobenius(&self) -> BaseElem {
        self.frobenius_pow(1)
    }

    /// t ↦ t^{p^k}, computed by substituting (t−1) ↦ (1+(t−1))^{p^k} − 1.
    pub fn frobenius_pow(&self, k: u32) -> BaseElem {
        let ring = &self.ring;
        let pk = BigInt::from(ring.p()).pow(k);
        let m = ring.prec_t() as usize;
        let mut v = vec![BigInt::zero(); m];
        for (i, c) in v.iter_mut().enumerate().skip(1) {
            let i_big = BigInt::from(i);
            if i_big <= pk {
                *c = binomial(pk.clone(), i_big).mod_floor(ring.pn());
            }
        }
        let v = BaseElem {
            ring: ring.clone(),
            coeffs: v,
        };
        let mut acc = ring.zero();
        for i in (0..m).rev() {
            acc = acc.mul(&v).add(&ring.from_bigint(&self.coeffs[i]));
        }
        acc
    }

    /// Canonical lift to ℤ[t]: the (t−1)-basis representative with
    /// coefficients in `[0, p^N)`, expanded into powers of t.
    pub fn lift_t(&self) -> IntPoly {
        let vars = self.ring.tvar();
        let t_minus_1 = IntPoly::var(vars.clone(), 0).sub(&IntPoly::one(vars.clone()));
        let mut acc = IntPoly::zero(vars.clone());
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(&t_minus_1)
                .add(&IntPoly::constant(vars.clone(), c.clone()));
        }
        acc
    }

    /// Image under t ↦ 1 (equivalently q ↦ 1), an integer mod p^N.
    pub fn eval_t_1(&self) -> BigInt {
        self.coeffs[0].clone()
    }

    /// Least i with a nonzero (t−1)^i coefficient, or None for zero.
    pub fn t_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !Zero::is_zero(c))
    }

    /// Reduce into a ring with the same p and K but smaller precision.
    pub fn reduce_to(&self, target: &BaseRing) -> BaseElem {
        assert_eq!(self.ring.p(), target.p());
        assert_eq!(self.ring.root_depth(), target.root_depth());
        assert!(target.prec_p() <= self.ring.prec_p());
        assert!(target.prec_t() <= self.ring.prec_t());
        target.elem(self.coeffs[..target.prec_t() as usize].to_vec())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": "t-1",
            "p": self.ring.p(),
            "prec_p": self.ring.prec_p(),
            "prec_t": self.ring.prec_t(),
            "root_depth": self.ring.root_depth(),
            "coeffs": self.coeffs.iter().map(int_to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 if c.is_one() => "(t-1)".to_string(),
                1 => format!("{c}*(t-1)"),
                _ if c.is_one() => format!("(t-1)^{i}"),
                _ => format!("{c}*(t-1)^{i}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for BaseElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
