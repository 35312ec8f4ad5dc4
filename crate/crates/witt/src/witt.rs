//! Truncated p-typical Witt vectors over a pluggable coefficient ring.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use base_arith::{eval_poly, RingOps};

use crate::structure::{structure_polys, StructurePolys};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WittError {
    #[error("operands live in different Witt rings (lengths {0} vs {1})")]
    MixedRings(usize, usize),
}

/// Components a_0, …, a_{m−1}; all structure comes from the ring handle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WittVec<E> {
    pub comps: Vec<E>,
}

impl<E> WittVec<E> {
    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

pub struct WittRing<R: RingOps> {
    pub coeffs: R,
    p: u64,
    m: usize,
    polys: Arc<StructurePolys>,
}

impl<R: RingOps> WittRing<R> {
    pub fn new(coeffs: R, p: u64, m: usize) -> Self {
        WittRing {
            coeffs,
            p,
            m,
            polys: structure_polys(p, m),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn polys(&self) -> &StructurePolys {
        &self.polys
    }

    pub fn from_comps(&self, comps: Vec<R::Elem>) -> WittVec<R::Elem> {
        assert_eq!(comps.len(), self.m, "component count must equal the length");
        WittVec { comps }
    }

    pub fn zero(&self) -> WittVec<R::Elem> {
        WittVec {
            comps: vec![self.coeffs.zero(); self.m],
        }
    }

    pub fn one(&self) -> WittVec<R::Elem> {
        self.teichmuller(self.coeffs.one())
    }

    /// [a] = (a, 0, …, 0).
    pub fn teichmuller(&self, a: R::Elem) -> WittVec<R::Elem> {
        let mut comps = vec![self.coeffs.zero(); self.m];
        comps[0] = a;
        WittVec { comps }
    }

    fn check(&self, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> Result<(), WittError> {
        if a.len() != self.m || b.len() != self.m {
            return Err(WittError::MixedRings(a.len(), b.len()));
        }
        Ok(())
    }

    fn binary_args(&self, a: &WittVec<R::Elem>, b: &WittVec<R::Elem>) -> Vec<R::Elem> {
        a.comps.iter().chain(b.comps.iter()).cloned().collect()
    }

    pub fn add(
        &self,
        a: &WittVec<R::Elem>,
        b: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>, WittError> {
        self.check(a, b)?;
        let args = self.binary_args(a, b);
        Ok(WittVec {
            comps: self
                .polys
                .sum
                .iter()
                .map(|s| eval_poly(&self.coeffs, s, &args))
                .collect(),
        })
    }

    pub fn mul(
        &self,
        a: &WittVec<R::Elem>,
        b: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>, WittError> {
        self.check(a, b)?;
        let args = self.binary_args(a, b);
        Ok(WittVec {
            comps: self
                .polys
                .prod
                .iter()
                .map(|s| eval_poly(&self.coeffs, s, &args))
                .collect(),
        })
    }

    pub fn neg(&self, a: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        WittVec {
            comps: self
                .polys
                .neg
                .iter()
                .map(|s| eval_poly(&self.coeffs, s, &a.comps))
                .collect(),
        }
    }

    pub fn sub(
        &self,
        a: &WittVec<R::Elem>,
        b: &WittVec<R::Elem>,
    ) -> Result<WittVec<R::Elem>, WittError> {
        self.add(a, &self.neg(b))
    }

    /// n·a by double-and-add; n may be negative.
    pub fn scalar_int(&self, n: &BigInt, a: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        let mut n_abs = n.abs();
        let mut acc = self.zero();
        let mut base = a.clone();
        let two = BigInt::from(2);
        while !n_abs.is_zero() {
            if (&n_abs % &two) == BigInt::from(1) {
                acc = self.add(&acc, &base).expect("lengths agree");
            }
            n_abs /= &two;
            if !n_abs.is_zero() {
                base = self.add(&base, &base).expect("lengths agree");
            }
        }
        if n.is_negative() {
            self.neg(&acc)
        } else {
            acc
        }
    }

    /// The image of an integer under ℤ → W_m(R).
    pub fn from_int(&self, n: &BigInt) -> WittVec<R::Elem> {
        self.scalar_int(n, &self.one())
    }

    /// Ghost components gh_0, …, gh_{m−1}.
    pub fn ghost(&self, a: &WittVec<R::Elem>) -> Vec<R::Elem> {
        self.polys
            .ghost_x
            .iter()
            .map(|g| eval_poly(&self.coeffs, g, &a.comps))
            .collect()
    }

    /// V(a_0, …, a_{m−1}) = (0, a_0, …, a_{m−2}): same length, top dropped.
    pub fn v_shift(&self, a: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        let mut comps = Vec::with_capacity(self.m);
        comps.push(self.coeffs.zero());
        comps.extend(a.comps[..self.m - 1].iter().cloned());
        WittVec { comps }
    }

    /// Frobenius W_m → W_{m−1} by the universal polynomials:
    /// gh_i(F(a)) = gh_{i+1}(a).
    pub fn frobenius(&self, a: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        WittVec {
            comps: self
                .polys
                .frob
                .iter()
                .map(|s| eval_poly(&self.coeffs, s, &a.comps))
                .collect(),
        }
    }

    /// On perfect coefficient rings Frobenius preserves the length and acts
    /// coordinatewise by p-th powers. `None` when the ring is not perfect.
    pub fn frobenius_perfect(&self, a: &WittVec<R::Elem>) -> Option<WittVec<R::Elem>> {
        self.coeffs.perfect_char()?;
        Some(WittVec {
            comps: a
                .comps
                .iter()
                .map(|c| self.coeffs.pow(c, self.p as u32))
                .collect(),
        })
    }

    /// δ(a) = (F(a) − a^p)/p ∈ W_{m−1}, via the universal δ polynomials.
    pub fn delta(&self, a: &WittVec<R::Elem>) -> WittVec<R::Elem> {
        WittVec {
            comps: self
                .polys
                .delta
                .iter()
                .map(|s| eval_poly(&self.coeffs, s, &a.comps))
                .collect(),
        }
    }

    /// δ by the perfect-coefficient route: compute F coordinatewise, subtract
    /// a^p, then divide by p as V-shift plus p-th roots. `None` when the
    /// coefficients are not perfect.
    pub fn delta_perfect(&self, a: &WittVec<R::Elem>) -> Option<WittVec<R::Elem>> {
        self.coeffs.perfect_char()?;
        let fa = self.frobenius_perfect(a)?;
        let mut ap = self.one();
        for _ in 0..self.p {
            ap = self.mul(&ap, a).expect("lengths agree");
        }
        let diff = self.sub(&fa, &ap).expect("lengths agree");
        // First component is gh_0(F(a) − a^p) = p·a_1 = 0 in characteristic p.
        assert!(
            self.coeffs.is_zero(&diff.comps[0]),
            "F(a) − a^p not divisible by p"
        );
        // p·b = V(F(b)) = (0, b_0^p, …): peel the shift and take roots.
        let comps: Option<Vec<R::Elem>> = diff.comps[1..]
            .iter()
            .map(|c| self.coeffs.frobenius_root(c))
            .collect();
        Some(WittVec { comps: comps? })
    }

    /// W_m over a local coefficient ring is local: a vector is a unit
    /// exactly when its first component is a unit of the coefficient ring.
    pub fn is_unit(&self, a: &WittVec<R::Elem>) -> bool {
        self.coeffs.is_unit(&a.comps[0])
    }

    pub fn is_zero(&self, a: &WittVec<R::Elem>) -> bool {
        a.comps.iter().all(|c| self.coeffs.is_zero(c))
    }

    /// All |R|^m vectors, when the coefficient ring can be enumerated.
    pub fn enumerate(&self) -> Option<Vec<WittVec<R::Elem>>> {
        let base = self.coeffs.enumerate()?;
        let mut out = vec![vec![]];
        for _ in 0..self.m {
            let mut next = Vec::with_capacity(out.len() * base.len());
            for prefix in &out {
                for e in &base {
                    let mut longer: Vec<R::Elem> = prefix.clone();
                    longer.push(e.clone());
                    next.push(longer);
                }
            }
            out = next;
        }
        Some(out.into_iter().map(|comps| WittVec { comps }).collect())
    }

    pub fn render(&self, a: &WittVec<R::Elem>) -> String {
        let comps: Vec<String> = a.comps.iter().map(|c| self.coeffs.render(c)).collect();
        format!("({})", comps.join(", "))
    }

    pub fn to_json(&self, a: &WittVec<R::Elem>) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "m": self.m,
            "comps": a.comps.iter().map(|c| self.coeffs.render(c)).collect::<Vec<_>>(),
        })
    }
}
