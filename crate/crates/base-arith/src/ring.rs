//! Small coefficient rings behind one trait, so Witt-vector machinery can be
//! instantiated over ℤ, ℤ/n, finite fields, and square-zero extensions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mpoly::IntPoly;

pub trait RingOps {
    type Elem: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn is_unit(&self, a: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut result = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// All elements, for rings small enough to sweep exhaustively.
    fn enumerate(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    /// `Some(p)` when the ring has characteristic `p` and `x ↦ x^p` is
    /// bijective, so p-th roots exist and are unique.
    fn perfect_char(&self) -> Option<u64> {
        None
    }

    fn frobenius_root(&self, _a: &Self::Elem) -> Option<Self::Elem> {
        None
    }
}

/// Evaluate an integer polynomial at ring elements, one per variable.
pub fn eval_poly<R: RingOps>(ring: &R, poly: &IntPoly, args: &[R::Elem]) -> R::Elem {
    assert_eq!(args.len(), poly.vars().len(), "argument count mismatch");
    let mut acc = ring.zero();
    for (exps, c) in poly.terms() {
        let mut term = ring.from_bigint(c);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = ring.mul(&term, &ring.pow(&args[i], e));
            }
        }
        acc = ring.add(&acc, &term);
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------

/// The integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigIntRing;

impl RingOps for BigIntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs() == BigInt::one()
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------

/// ℤ/n for any modulus n ≥ 2, canonical representatives in `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZmodRing {
    n: BigInt,
    prime: bool,
}

impl ZmodRing {
    pub fn new(n: BigInt) -> Self {
        assert!(n >= BigInt::from(2), "modulus must be at least 2");
        let prime = n.to_u64().map(is_prime_u64).unwrap_or(false);
        ZmodRing { n, prime }
    }

    pub fn from_u64(n: u64) -> Self {
        Self::new(BigInt::from(n))
    }

    pub fn modulus(&self) -> &BigInt {
        &self.n
    }

    fn reduce(&self, a: &BigInt) -> BigInt {
        a.mod_floor(&self.n)
    }
}

impl RingOps for ZmodRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a + b))
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(&(-a))
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(&(a * b))
    }
    fn from_bigint(&self, n: &BigInt) -> BigInt {
        self.reduce(n)
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.gcd(&self.n) == BigInt::one()
    }
    fn render(&self, a: &BigInt) -> String {
        a.to_string()
    }

    fn enumerate(&self) -> Option<Vec<BigInt>> {
        let n = self.n.to_u64()?;
        if n > 4096 {
            return None;
        }
        Some((0..n).map(BigInt::from).collect())
    }

    fn perfect_char(&self) -> Option<u64> {
        if self.prime {
            self.n.to_u64()
        } else {
            None
        }
    }

    fn frobenius_root(&self, a: &BigInt) -> Option<BigInt> {
        // x ↦ x^p is the identity on the prime field.
        if self.prime {
            Some(a.clone())
        } else {
            None
        }
    }
}

// ---------------------------------------------------------------------------

/// The finite field F_{p^k} as F_p[g]/(m(g)) for a fixed irreducible m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GfRing {
    p: u64,
    k: usize,
    /// Representation of g^k in the basis 1, g, …, g^{k−1}.
    top: Vec<u64>,
}

impl GfRing {
    /// Supported orders: 2, 3, 4, 5, 7, 8, 9, 25.
    pub fn new(q: u64) -> Self {
        // g^k written in the power basis, from fixed irreducible polynomials:
        // F_4: g²=g+1, F_8: g³=g+1, F_9: g²=−1, F_25: g²=−2.
        let (p, k, top): (u64, usize, Vec<u64>) = match q {
            2 | 3 | 5 | 7 => (q, 1, vec![]),
            4 => (2, 2, vec![1, 1]),
            8 => (2, 3, vec![1, 1, 0]),
            9 => (3, 2, vec![2, 0]),
            25 => (5, 2, vec![3, 0]),
            _ => panic!("unsupported field order {q}"),
        };
        GfRing { p, k, top }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree k, with order p^k.
    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    pub fn gen(&self) -> Vec<u64> {
        let mut v = vec![0; self.k];
        if self.k > 1 {
            v[1] = 1;
        } else {
            // In the prime field the designated generator degenerates to 1.
            v[0] = 1;
        }
        v
    }

    fn reduce_vec(&self, raw: Vec<u64>) -> Vec<u64> {
        // raw has length up to 2k−1; fold g^{k+j} down using the g^k table.
        let mut raw: Vec<u64> = raw.into_iter().map(|c| c % self.p).collect();
        while raw.len() > self.k {
            let d = raw.len() - 1;
            let c = raw[d];
            raw.truncate(d);
            if c != 0 {
                let shift = d - self.k;
                for (i, &tc) in self.top.iter().enumerate() {
                    raw[shift + i] = (raw[shift + i] + c * tc) % self.p;
                }
            }
        }
        raw.resize(self.k, 0);
        raw
    }
}

impl RingOps for GfRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.k]
    }
    fn one(&self) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = 1;
        v
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| (self.p - x % self.p) % self.p).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let mut raw = vec![0u64; 2 * self.k - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                raw[i + j] = (raw[i + j] + x * y) % self.p;
            }
        }
        self.reduce_vec(raw)
    }
    fn from_bigint(&self, n: &BigInt) -> Vec<u64> {
        let mut v = vec![0; self.k];
        v[0] = n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap();
        v
    }
    fn is_unit(&self, a: &Vec<u64>) -> bool {
        !self.is_zero(a)
    }
    fn render(&self, a: &Vec<u64>) -> String {
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match i {
                0 => c.to_string(),
                1 if c == 1 => "g".to_string(),
                1 => format!("{c}*g"),
                _ if c == 1 => format!("g^{i}"),
                _ => format!("{c}*g^{i}"),
            })
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+")
        }
    }

    fn enumerate(&self) -> Option<Vec<Vec<u64>>> {
        let mut out = vec![self.zero()];
        for i in 0..self.k {
            let mut next = Vec::with_capacity(out.len() * self.p as usize);
            for e in &out {
                for c in 0..self.p {
                    let mut e2 = e.clone();
                    e2[i] = c;
                    next.push(e2);
                }
            }
            out = next;
        }
        Some(out)
    }

    fn perfect_char(&self) -> Option<u64> {
        Some(self.p)
    }

    fn frobenius_root(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        // x^{p^k} = x, so the p-th root is x^{p^{k−1}}.
        let mut r = a.clone();
        for _ in 0..self.k.saturating_sub(1) {
            let mut acc = r.clone();
            for _ in 1..self.p {
                acc = self.mul(&acc, &r);
            }
            r = acc;
        }
        Some(r)
    }
}

// ---------------------------------------------------------------------------

/// ℤ[vars] as a coefficient ring, so universal identities can be checked as
/// polynomial identities rather than pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: std::sync::Arc<Vec<String>>,
}

impl PolyRing {
    pub fn new(vars: std::sync::Arc<Vec<String>>) -> Self {
        PolyRing { vars }
    }

    pub fn var(&self, idx: usize) -> IntPoly {
        IntPoly::var(self.vars.clone(), idx)
    }

    pub fn vars(&self) -> &std::sync::Arc<Vec<String>> {
        &self.vars
    }
}

impl RingOps for PolyRing {
    type Elem = IntPoly;

    fn zero(&self) -> IntPoly {
        IntPoly::zero(self.vars.clone())
    }
    fn one(&self) -> IntPoly {
        IntPoly::one(self.vars.clone())
    }
    fn add(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a.add(b)
    }
    fn neg(&self, a: &IntPoly) -> IntPoly {
        a.neg()
    }
    fn mul(&self, a: &IntPoly, b: &IntPoly) -> IntPoly {
        a.mul(b)
    }
    fn from_bigint(&self, n: &BigInt) -> IntPoly {
        IntPoly::constant(self.vars.clone(), n.clone())
    }
    fn is_unit(&self, a: &IntPoly) -> bool {
        a.total_degree() == Some(0) && a.constant_term().abs() == BigInt::one()
    }
    fn render(&self, a: &IntPoly) -> String {
        format!("{a}")
    }

    fn is_zero(&self, a: &IntPoly) -> bool {
        a.is_zero()
    }
}

// ---------------------------------------------------------------------------

/// The square-zero extension R[ε]/(ε²); elements are pairs a + εb.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualRing<R: RingOps> {
    pub base: R,
}

impl<R: RingOps> DualRing<R> {
    pub fn new(base: R) -> Self {
        DualRing { base }
    }

    pub fn eps(&self) -> (R::Elem, R::Elem) {
        (self.base.zero(), self.base.one())
    }

    pub fn embed(&self, a: R::Elem) -> (R::Elem, R::Elem) {
        (a, self.base.zero())
    }
}

impl<R: RingOps> RingOps for DualRing<R> {
    type Elem = (R::Elem, R::Elem);

    fn zero(&self) -> Self::Elem {
        (self.base.zero(), self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        (self.base.one(), self.base.zero())
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.base.add(&a.0, &b.0), self.base.add(&a.1, &b.1))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        (self.base.neg(&a.0), self.base.neg(&a.1))
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (
            self.base.mul(&a.0, &b.0),
            self.base
                .add(&self.base.mul(&a.0, &b.1), &self.base.mul(&a.1, &b.0)),
        )
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        (self.base.from_bigint(n), self.base.zero())
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        // ε is nilpotent, so only the constant part matters.
        self.base.is_unit(&a.0)
    }
    fn render(&self, a: &Self::Elem) -> String {
        format!("({})+({})*eps", self.base.render(&a.0), self.base.render(&a.1))
    }

    fn enumerate(&self) -> Option<Vec<Self::Elem>> {
        let base = self.base.enumerate()?;
        let mut out = Vec::with_capacity(base.len() * base.len());
        for a in &base {
            for b in &base {
                out.push((a.clone(), b.clone()));
            }
        }
        Some(out)
    }
}
