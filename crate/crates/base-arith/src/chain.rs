//! Finite chain rings: ℤ/p^N and the truncated cyclotomic ring
//! ℤ[u]/(Φ_p(u), p^N). Both are quotients of a discrete valuation ring by a
//! power of its maximal ideal, so every element is a unit times a power of
//! the uniformizer and Smith reduction works with ordinary division.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, ToPrimitive, Zero};

use crate::error::ArithError;
use crate::linalg::{solve_zmod, vp_int};
use crate::mpoly::{int_to_json, IntPoly};
use crate::ring::is_prime_u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainKind {
    /// ℤ/p^N, uniformizer p, length N.
    Zmod,
    /// ℤ[u]/(Φ_p(u), p^N), uniformizer u − 1, length N(p−1).
    Cyclotomic,
}

#[derive(Debug, PartialEq, Eq)]
struct ChainData {
    kind: ChainKind,
    p: u64,
    prec_p: u32,
    pn: BigInt,
    /// Coordinates per element: 1 for Zmod, p−1 for Cyclotomic.
    deg: usize,
    nilpotency: u32,
}

#[derive(Clone, Debug)]
pub struct ChainRing {
    data: Arc<ChainData>,
}

impl PartialEq for ChainRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.kind == other.data.kind
                && self.data.p == other.data.p
                && self.data.prec_p == other.data.prec_p)
    }
}
impl Eq for ChainRing {}

/// Coordinates in the power basis 1, u, …, u^{p−2} (just the residue for
/// Zmod), canonically reduced mod p^N.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainElem {
    ring: ChainRing,
    coeffs: Vec<BigInt>,
}

impl ChainRing {
    pub fn create(kind: ChainKind, p: u64, prec_p: u32) -> Result<Self, ArithError> {
        if !is_prime_u64(p) {
            return Err(ArithError::NonPrime(p));
        }
        if prec_p == 0 {
            return Err(ArithError::ZeroPrecision("prec_p".into()));
        }
        let deg = match kind {
            ChainKind::Zmod => 1,
            ChainKind::Cyclotomic => (p - 1) as usize,
        };
        let nilpotency = match kind {
            ChainKind::Zmod => prec_p,
            ChainKind::Cyclotomic => prec_p * (p as u32 - 1),
        };
        Ok(ChainRing {
            data: Arc::new(ChainData {
                kind,
                p,
                prec_p,
                pn: BigInt::from(p).pow(prec_p),
                deg,
                nilpotency,
            }),
        })
    }

    pub fn zmod(p: u64, prec_p: u32) -> Result<Self, ArithError> {
        Self::create(ChainKind::Zmod, p, prec_p)
    }

    pub fn cyclotomic(p: u64, prec_p: u32) -> Result<Self, ArithError> {
        Self::create(ChainKind::Cyclotomic, p, prec_p)
    }

    pub fn kind(&self) -> ChainKind {
        self.data.kind
    }
    pub fn p(&self) -> u64 {
        self.data.p
    }
    pub fn prec_p(&self) -> u32 {
        self.data.prec_p
    }
    pub fn pn(&self) -> &BigInt {
        &self.data.pn
    }
    pub fn deg(&self) -> usize {
        self.data.deg
    }

    /// Nilpotency degree e: π^e = 0 and π^{e−1} ≠ 0.
    pub fn nilpotency(&self) -> u32 {
        self.data.nilpotency
    }

    pub fn elem(&self, mut coeffs: Vec<BigInt>) -> ChainElem {
        coeffs.resize(self.data.deg, BigInt::zero());
        for c in &mut coeffs {
            *c = c.mod_floor(&self.data.pn);
        }
        ChainElem {
            ring: self.clone(),
            coeffs,
        }
    }

    /// Reduce a polynomial in u (coefficients of 1, u, u², …) modulo
    /// Φ_p(u) = 1 + u + … + u^{p−1} and p^N.
    pub fn from_u_poly(&self, mut raw: Vec<BigInt>) -> ChainElem {
        let deg = self.data.deg;
        while raw.len() > deg {
            let top = raw.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = raw.len() - deg;
            // u^{deg+shift} = −u^shift(1 + u + … + u^{deg−1}) when the ring
            // is cyclotomic; for Zmod deg = 1 and Φ degenerates the same way
            // only if p = 2, so Zmod inputs must already be constants.
            assert!(
                self.data.kind == ChainKind::Cyclotomic,
                "polynomial input requires the cyclotomic ring"
            );
            for i in 0..deg {
                raw[shift + i] -= &top;
            }
        }
        self.elem(raw)
    }

    pub fn zero(&self) -> ChainElem {
        self.elem(vec![])
    }

    pub fn one(&self) -> ChainElem {
        self.elem(vec![BigInt::one()])
    }

    pub fn from_bigint(&self, n: &BigInt) -> ChainElem {
        self.elem(vec![n.clone()])
    }

    pub fn uniformizer(&self) -> ChainElem {
        match self.data.kind {
            ChainKind::Zmod => self.from_bigint(&BigInt::from(self.data.p)),
            ChainKind::Cyclotomic => {
                self.from_u_poly(vec![-BigInt::one(), BigInt::one()])
            }
        }
    }

    pub fn pi_pow(&self, k: u32) -> ChainElem {
        self.uniformizer().pow(k)
    }

    /// Evaluate a univariate integer polynomial at u (the image of t under
    /// the specialization t ↦ ζ_p).
    pub fn from_t_poly(&self, f: &IntPoly) -> ChainElem {
        assert_eq!(f.vars().len(), 1, "univariate polynomial expected");
        let deg = match f.degree_in(0) {
            None => return self.zero(),
            Some(d) => d,
        };
        let raw: Vec<BigInt> = (0..=deg).map(|d| f.coeff_of(&[d])).collect();
        match self.data.kind {
            ChainKind::Cyclotomic => self.from_u_poly(raw),
            ChainKind::Zmod => {
                // t ↦ ζ_p only makes sense cyclotomically unless p = 2,
                // where ζ_2 = −1 lives in ℤ/2^N already.
                assert_eq!(self.data.p, 2, "Zmod specialization needs p = 2");
                let mut acc = BigInt::zero();
                for (i, c) in raw.iter().enumerate() {
                    if i % 2 == 0 {
                        acc += c;
                    } else {
                        acc -= c;
                    }
                }
                self.from_bigint(&acc)
            }
        }
    }

    /// All p^{N·deg} elements; meant for exhaustive checks at tiny sizes.
    pub fn enumerate(&self) -> Vec<ChainElem> {
        let size = self
            .data
            .pn
            .pow(self.data.deg as u32)
            .to_u64()
            .filter(|&s| s <= 1 << 20)
            .expect("chain ring too large to enumerate");
        let _ = size;
        let mut out = vec![self.zero()];
        for i in 0..self.data.deg {
            let mut next = Vec::new();
            for e in &out {
                let mut c = BigInt::zero();
                while &c < &self.data.pn {
                    let mut coeffs = e.coeffs.clone();
                    coeffs[i] = c.clone();
                    next.push(self.elem(coeffs));
                    c += 1;
                }
            }
            out = next;
        }
        out
    }
}

impl ChainElem {
    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_ring(&self, other: &ChainElem) {
        assert!(self.ring == other.ring, "elements of different chain rings");
    }

    pub fn add(&self, other: &ChainElem) -> ChainElem {
        self.check_ring(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b).mod_floor(self.ring.pn()))
            .collect();
        ChainElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> ChainElem {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| (-a).mod_floor(self.ring.pn()))
            .collect();
        ChainElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &ChainElem) -> ChainElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ChainElem) -> ChainElem {
        self.check_ring(other);
        let deg = self.ring.deg();
        let mut raw = vec![BigInt::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                raw[i + j] += a * b;
            }
        }
        if deg == 1 {
            self.ring.elem(raw)
        } else {
            self.ring.from_u_poly(raw)
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> ChainElem {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| (a * n).mod_floor(self.ring.pn()))
            .collect();
        ChainElem {
            ring: self.ring.clone(),
            coeffs,
        }
    }

    pub fn pow(&self, e: u32) -> ChainElem {
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

    /// π-adic valuation in [0, e], where e is the nilpotency degree. The
    /// element is rewritten in the (u−1)-basis a_0 + a_1(u−1) + …; since
    /// p = unit·(u−1)^{p−1}, the candidate valuations (p−1)·v_p(a_i) + i are
    /// pairwise distinct modulo p−1 and the minimum is exact.
    pub fn valuation(&self) -> u32 {
        let e = self.ring.nilpotency();
        if self.is_zero() {
            return e;
        }
        let p = BigInt::from(self.ring.p());
        let n = self.ring.prec_p();
        match self.ring.kind() {
            ChainKind::Zmod => vp_int(&self.coeffs[0], &p).min(n),
            ChainKind::Cyclotomic => {
                let deg = self.ring.deg();
                // a_i = Σ_j C(j,i) c_j transforms the u-basis into the
                // (u−1)-basis exactly over ℤ.
                let mut best = e;
                for i in 0..deg {
                    let mut a = BigInt::zero();
                    for (j, c) in self.coeffs.iter().enumerate().skip(i) {
                        a += binomial(BigInt::from(j), BigInt::from(i)) * c;
                    }
                    a = a.mod_floor(self.ring.pn());
                    let vpa = if a.is_zero() { n } else { vp_int(&a, &p).min(n) };
                    let cand = (self.ring.p() as u32 - 1) * vpa + i as u32;
                    best = best.min(cand);
                }
                best.min(e)
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == 0
    }

    /// Solve self · x = rhs; `None` when rhs is not a multiple.
    pub fn solve_mul(&self, rhs: &ChainElem) -> Option<ChainElem> {
        self.check_ring(rhs);
        let deg = self.ring.deg();
        // Columns are self·u^j in the power basis.
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(deg);
        let u = if deg == 1 {
            None
        } else {
            Some(self.ring.from_u_poly(vec![BigInt::zero(), BigInt::one()]))
        };
        let mut cur = self.clone();
        for j in 0..deg {
            cols.push(cur.coeffs.clone());
            if j + 1 < deg {
                cur = cur.mul(u.as_ref().unwrap());
            }
        }
        let a: Vec<Vec<BigInt>> = (0..deg)
            .map(|i| (0..deg).map(|j| cols[j][i].clone()).collect())
            .collect();
        let x = solve_zmod(
            &BigInt::from(self.ring.p()),
            self.ring.prec_p(),
            &a,
            rhs.coeffs(),
        )?;
        Some(self.ring.elem(x))
    }

    pub fn inv(&self) -> Result<ChainElem, ArithError> {
        if !self.is_unit() {
            return Err(ArithError::NotAUnit(self.to_string()));
        }
        Ok(self
            .solve_mul(&self.ring.one())
            .expect("units divide one"))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "kind": match self.ring.kind() {
                ChainKind::Zmod => "zmod",
                ChainKind::Cyclotomic => "cyclotomic",
            },
            "p": self.ring.p(),
            "prec_p": self.ring.prec_p(),
            "coeffs": self.coeffs.iter().map(int_to_json).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ChainElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ring.kind() {
            ChainKind::Zmod => write!(f, "{}", self.coeffs[0]),
            ChainKind::Cyclotomic => {
                let parts: Vec<String> = self
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| match i {
                        0 => c.to_string(),
                        1 if c.is_one() => "u".to_string(),
                        1 => format!("{c}*u"),
                        _ if c.is_one() => format!("u^{i}"),
                        _ => format!("{c}*u^{i}"),
                    })
                    .collect();
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
        }
    }
}

impl fmt::Debug for ChainElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
