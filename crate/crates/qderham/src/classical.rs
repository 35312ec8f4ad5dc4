//! Independent classical de Rham operators used as the oracle for the
//! q ↦ 1 reduction: term-by-term symbolic differentiation d(x^n) = n·x^{n−1},
//! composed with the inverse Jacobian of the substitution for non-standard
//! framings.  Everything here runs over the chain ring directly and shares
//! no differentiation code with the q-side machinery.

use std::collections::BTreeMap;

use base_arith::{ChainElem, ChainRing};
use num_bigint::BigInt;

use crate::algebra::{FramedAlgebra, Framing};
use crate::complex::Column;

/// Univariate windowed Laurent polynomial over the chain ring.
type ChainUni = BTreeMap<i64, ChainElem>;

/// Sparse columns of the classical partial derivative ∂/∂X_s on the given
/// monomial basis, with X_s the framing coordinate.
pub(crate) fn classical_operator(
    algebra: &FramedAlgebra,
    ring: &ChainRing,
    basis: &[Vec<i64>],
    index: &BTreeMap<Vec<i64>, usize>,
    s: usize,
) -> Vec<Column<ChainElem>> {
    let lo = algebra.lo(s);
    let hi = algebra.window();
    let jac_inv = match &algebra.framings()[s] {
        Framing::Standard => None,
        Framing::Substituted(expr) => {
            // σ at q = 1, then its symbolic derivative, then the inverse of
            // that series; the linear coefficient stays a unit at q = 1.
            let mut sigma = ChainUni::new();
            for (&k, c) in expr {
                let v = ring.from_bigint(&c.eval_t_1());
                if !v.is_zero() {
                    sigma.insert(k, v);
                }
            }
            let mut jac = ChainUni::new();
            for (&k, c) in &sigma {
                let d = c.mul_int(&BigInt::from(k));
                if !d.is_zero() {
                    jac.insert(k - 1, d);
                }
            }
            Some(chain_uni_inverse_at(&jac, 0, ring, lo, hi))
        }
    };

    basis
        .iter()
        .map(|e| {
            let n = e[s];
            if n - 1 < lo {
                return Column::new();
            }
            let coeff = ring.from_bigint(&BigInt::from(n));
            if coeff.is_zero() {
                return Column::new();
            }
            // The raw derivative slice n·x^{n−1} in coordinate s.
            let mut image: ChainUni = BTreeMap::from([(n - 1, coeff)]);
            if let Some(jinv) = &jac_inv {
                image = chain_uni_mul(jinv, &image, lo, hi);
            }
            let mut col = Column::new();
            for (&m, c) in &image {
                if c.is_zero() {
                    continue;
                }
                let mut exps = e.clone();
                exps[s] = m;
                col.insert(index[&exps], c.clone());
            }
            col
        })
        .collect()
}

fn chain_uni_mul(a: &ChainUni, b: &ChainUni, lo: i64, hi: i64) -> ChainUni {
    let mut out = ChainUni::new();
    for (&ka, ca) in a {
        for (&kb, cb) in b {
            let k = ka + kb;
            if k < lo || k > hi {
                continue;
            }
            let prod = ca.mul(cb);
            if prod.is_zero() {
                continue;
            }
            match out.remove(&k) {
                None => {
                    out.insert(k, prod);
                }
                Some(old) => {
                    let sum = old.add(&prod);
                    if !sum.is_zero() {
                        out.insert(k, sum);
                    }
                }
            }
        }
    }
    out
}

/// Inverse of a chain-coefficient series with a unit at x^pivot and
/// maximal-ideal coefficients elsewhere, by the finite geometric series.
fn chain_uni_inverse_at(
    f: &ChainUni,
    pivot: i64,
    ring: &ChainRing,
    lo: i64,
    hi: i64,
) -> ChainUni {
    let c = f.get(&pivot).expect("pivot coefficient present");
    let c_inv = c.inv().expect("pivot coefficient is a unit");
    let mut w = ChainUni::new();
    for (&k, v) in f {
        if k == pivot {
            continue;
        }
        let shifted = k - pivot;
        if shifted < lo || shifted > hi {
            continue;
        }
        let t = v.mul(&c_inv);
        if !t.is_zero() {
            w.insert(shifted, t);
        }
    }
    let mut acc: ChainUni = BTreeMap::from([(0i64, ring.one())]);
    let mut term: ChainUni = BTreeMap::from([(0i64, ring.one())]);
    let cap = ring.nilpotency() + 2;
    for _ in 0..cap {
        term = chain_uni_mul(&term, &w, lo, hi);
        for v in term.values_mut() {
            *v = v.neg();
        }
        if term.is_empty() {
            break;
        }
        for (&k, v) in &term {
            match acc.remove(&k) {
                None => {
                    acc.insert(k, v.clone());
                }
                Some(old) => {
                    let sum = old.add(v);
                    if !sum.is_zero() {
                        acc.insert(k, sum);
                    }
                }
            }
        }
    }
    assert!(term.is_empty(), "geometric series failed to terminate");
    let mut out = ChainUni::new();
    for (&k, v) in &acc {
        let shifted = k - pivot;
        if shifted < lo || shifted > hi {
            continue;
        }
        let scaled = v.mul(&c_inv);
        if !scaled.is_zero() {
            out.insert(shifted, scaled);
        }
    }
    out
}
