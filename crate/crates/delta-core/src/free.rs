//! The free delta-ring on `g` generators, realized as the integer polynomial
//! ring on formal derivative variables `v(i, j)` standing for `δ^j(x_i)`.
//!
//! The ring `ℤ[v(i,j)]` is p-torsionfree, so `δ(f) = (φ(f) - f^p)/p` is an
//! exact integer division whenever it is defined at all; a nonzero remainder
//! is a defect, not an input error, and panics.

use std::sync::Arc;

use base_arith::{varset, IntPoly, PolyRing};
use num_bigint::BigInt;
use serde_json::json;

use crate::error::DeltaError;

/// Handle for the free delta-ring on `gens` generators with derivative
/// variables `δ^j(x_i)` for `j` in `[0, depth)`.  Cloning is cheap.
#[derive(Clone, Debug)]
pub struct DeltaRing {
    p: u64,
    gens: usize,
    depth: usize,
    vars: Arc<Vec<String>>,
}

impl PartialEq for DeltaRing {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.gens == other.gens && self.depth == other.depth
    }
}
impl Eq for DeltaRing {}

/// Default number of derivative levels per generator.
pub const DEFAULT_DEPTH: usize = 4;

/// An element of a free delta-ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaPoly {
    ring: DeltaRing,
    poly: IntPoly,
}

fn level_name(gen: usize, level: usize) -> String {
    match level {
        0 => format!("x{gen}"),
        1 => format!("dx{gen}"),
        j => format!("d{j}x{gen}"),
    }
}

impl DeltaRing {
    /// Create the free delta-ring on `gens` generators at the prime `p` with
    /// the given number of derivative levels (`depth` must be at least 2 so
    /// that `δ` of a generator exists).
    pub fn with_depth(p: u64, gens: usize, depth: usize) -> Self {
        assert!(gens >= 1, "need at least one generator");
        assert!(depth >= 2, "depth < 2 leaves no room for delta of a generator");
        let mut names = Vec::with_capacity(gens * depth);
        for i in 0..gens {
            for j in 0..depth {
                names.push(level_name(i, j));
            }
        }
        DeltaRing { p, gens, depth, vars: varset(names) }
    }

    /// Create with the default depth.
    pub fn new(p: u64, gens: usize) -> Self {
        Self::with_depth(p, gens, DEFAULT_DEPTH)
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn gens(&self) -> usize {
        self.gens
    }
    pub fn depth(&self) -> usize {
        self.depth
    }
    pub fn vars(&self) -> Arc<Vec<String>> {
        self.vars.clone()
    }

    fn var_index(&self, gen: usize, level: usize) -> usize {
        assert!(gen < self.gens, "generator index out of range");
        assert!(level < self.depth, "derivative level out of range");
        gen * self.depth + level
    }

    /// The variable `δ^level(x_gen)` as an element.
    pub fn derivative_var(&self, gen: usize, level: usize) -> DeltaPoly {
        let idx = self.var_index(gen, level);
        DeltaPoly { ring: self.clone(), poly: IntPoly::var(self.vars.clone(), idx) }
    }

    /// The generator `x_gen`.
    pub fn gen(&self, gen: usize) -> DeltaPoly {
        self.derivative_var(gen, 0)
    }

    /// An integer constant.
    pub fn from_int(&self, v: i64) -> DeltaPoly {
        DeltaPoly { ring: self.clone(), poly: IntPoly::from_int(self.vars.clone(), v) }
    }

    pub fn from_bigint(&self, v: &BigInt) -> DeltaPoly {
        DeltaPoly {
            ring: self.clone(),
            poly: IntPoly::constant(self.vars.clone(), v.clone()),
        }
    }

    /// Wrap a raw polynomial over this ring's variable set.
    pub fn from_poly(&self, poly: IntPoly) -> DeltaPoly {
        assert_eq!(poly.vars().len(), self.vars.len(), "variable set mismatch");
        DeltaPoly { ring: self.clone(), poly }
    }

    /// A `PolyRing` over the same variables, for interoperating with the
    /// generic ring machinery (e.g. Witt vectors of delta-polynomials).
    pub fn poly_ring(&self) -> PolyRing {
        PolyRing::new(self.vars.clone())
    }

    /// Highest derivative level appearing in `f`, or None for constants.
    fn max_level(&self, poly: &IntPoly) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (exps, _) in poly.terms() {
            for (idx, e) in exps.iter().enumerate() {
                if *e > 0 {
                    let level = idx % self.depth;
                    best = Some(best.map_or(level, |b| b.max(level)));
                }
            }
        }
        best
    }

    fn check_shift(&self, poly: &IntPoly) -> Result<(), DeltaError> {
        if let Some(level) = self.max_level(poly) {
            // After the shift the polynomial uses level `level + 1`, which
            // requires `depth >= level + 2`.
            if level + 2 > self.depth {
                return Err(DeltaError::DepthExceeded {
                    needed: level + 2,
                    depth: self.depth,
                });
            }
        }
        Ok(())
    }
}

impl DeltaPoly {
    pub fn ring(&self) -> &DeltaRing {
        &self.ring
    }
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }
    pub fn into_poly(self) -> IntPoly {
        self.poly
    }
    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn check_same_ring(&self, other: &Self) {
        assert_eq!(self.ring, other.ring, "elements from different delta-rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_ring(other);
        DeltaPoly { ring: self.ring.clone(), poly: self.poly.add(&other.poly) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_ring(other);
        DeltaPoly { ring: self.ring.clone(), poly: self.poly.sub(&other.poly) }
    }

    pub fn neg(&self) -> Self {
        DeltaPoly { ring: self.ring.clone(), poly: self.poly.neg() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_ring(other);
        DeltaPoly { ring: self.ring.clone(), poly: self.poly.mul(&other.poly) }
    }

    pub fn pow(&self, e: u32) -> Self {
        DeltaPoly { ring: self.ring.clone(), poly: self.poly.pow(e) }
    }

    /// The Frobenius lift: the ring endomorphism sending each derivative
    /// variable `v` at level `j` to `v^p + p·(the level-(j+1) variable)`.
    pub fn phi(&self) -> Result<Self, DeltaError> {
        let ring = &self.ring;
        ring.check_shift(&self.poly)?;
        let p_const = BigInt::from(ring.p);
        let mut images = Vec::with_capacity(ring.vars.len());
        for i in 0..ring.gens {
            for j in 0..ring.depth {
                if j + 1 < ring.depth {
                    let v = IntPoly::var(ring.vars.clone(), ring.var_index(i, j));
                    let next = IntPoly::var(ring.vars.clone(), ring.var_index(i, j + 1));
                    images.push(v.pow(ring.p as u32).add(&next.mul_coeff(&p_const)));
                } else {
                    // Unreachable thanks to check_shift; placeholder image.
                    images.push(IntPoly::zero(ring.vars.clone()));
                }
            }
        }
        Ok(DeltaPoly {
            ring: ring.clone(),
            poly: self.poly.subst(ring.vars.clone(), &images),
        })
    }

    /// `δ(f) = (φ(f) - f^p) / p`, an exact division in the p-torsionfree
    /// free delta-ring.  A nonzero remainder is a defect and panics.
    pub fn delta(&self) -> Result<Self, DeltaError> {
        let ring = &self.ring;
        let num = self.phi()?.poly.sub(&self.poly.pow(ring.p as u32));
        let quot = num.div_int_exact(&BigInt::from(ring.p)).unwrap_or_else(|rem| {
            panic!(
                "defect: delta division by p left remainder {rem} — \
                 the ambient ring is p-torsionfree so this must be impossible"
            )
        });
        Ok(DeltaPoly { ring: ring.clone(), poly: quot })
    }

    /// `φ^n(f)` by iteration.
    pub fn phi_pow(&self, n: usize) -> Result<Self, DeltaError> {
        let mut acc = self.clone();
        for _ in 0..n {
            acc = acc.phi()?;
        }
        Ok(acc)
    }

    /// The n-th Joyal operation: `δ_0(f) = f` and for n ≥ 1,
    /// `δ_n(f) = (φ^n(f) - Σ_{k<n} p^k δ_k(f)^{p^{n-k}}) / p^n`,
    /// each division exact.
    pub fn joyal_delta_n(&self, n: usize) -> Result<Self, DeltaError> {
        let ring = &self.ring;
        let p = BigInt::from(ring.p);
        let mut deltas: Vec<IntPoly> = vec![self.poly.clone()];
        for level in 1..=n {
            let target = self.phi_pow(level)?.poly;
            let mut acc = target;
            let mut pk = BigInt::from(1);
            for (k, dk) in deltas.iter().enumerate() {
                let exp = (ring.p as u32).pow((level - k) as u32);
                acc = acc.sub(&dk.pow(exp).mul_coeff(&pk));
                pk *= &p;
            }
            let quot = acc.div_int_exact(&pk).unwrap_or_else(|rem| {
                panic!(
                    "defect: Joyal delta_{level} division by p^{level} left \
                     remainder {rem}"
                )
            });
            deltas.push(quot);
        }
        Ok(DeltaPoly { ring: ring.clone(), poly: deltas.pop().expect("nonempty") })
    }

    /// Serialize as a list of (exponent vector, coefficient) pairs together
    /// with the variable names.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vars": self.ring.vars.as_ref().clone(),
            "terms": self.poly.to_json(),
        })
    }
}

impl std::fmt::Display for DeltaPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Check that `h: x ↦ (x, δ(x))` respects the W₂ addition and multiplication
/// laws for the specific pair `(f, g)`, using the witt crate's universal W₂
/// structure polynomials evaluated on delta-polynomials.
pub fn w2_check(f: &DeltaPoly, g: &DeltaPoly) -> Result<bool, DeltaError> {
    assert_eq!(f.ring(), g.ring(), "elements from different delta-rings");
    let ring = f.ring();
    let wring = witt::WittRing::new(ring.poly_ring(), ring.p(), 2);
    let w = |h: &DeltaPoly| -> Result<witt::WittVec<IntPoly>, DeltaError> {
        Ok(wring.from_comps(vec![h.poly().clone(), h.delta()?.poly().clone()]))
    };
    let wf = w(f)?;
    let wg = w(g)?;
    let sum_ok = wring.add(&wf, &wg).expect("same length") == w(&f.add(g))?;
    let prod_ok = wring.mul(&wf, &wg).expect("same length") == w(&f.mul(g))?;
    Ok(sum_ok && prod_ok)
}

/// Certificate that `δ(x^(p^n))` is divisible by `p^n` in the free
/// delta-ring on one generator: carries the exact quotient.
#[derive(Clone, Debug)]
pub struct PowerDivisibilityCertificate {
    pub p: u64,
    pub n: u32,
    /// `δ(x^(p^n)) / p^n`, an integer polynomial.
    pub quotient: DeltaPoly,
}

impl PowerDivisibilityCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p,
            "n": self.n,
            "quotient": self.quotient.to_json(),
        })
    }
}

/// Compute `δ(x^(p^n))` on the free generator and divide by `p^n` exactly.
/// A failed division would falsify the divisibility lemma and panics.
pub fn delta_power_divisibility(
    p: u64,
    n: u32,
) -> Result<PowerDivisibilityCertificate, DeltaError> {
    // Depth 2 suffices: δ of a level-0 power only introduces level 1.
    let ring = DeltaRing::with_depth(p, 1, 2);
    let power = BigInt::from(p).pow(n);
    let exp = u32::try_from(&power).expect("p^n fits in u32 at tested sizes");
    let d = ring.gen(0).pow(exp).delta()?;
    let pn = BigInt::from(p).pow(n);
    let quotient = d.poly().div_int_exact(&pn).unwrap_or_else(|rem| {
        panic!("defect: delta(x^(p^{n})) not divisible by p^{n}: remainder {rem}")
    });
    Ok(PowerDivisibilityCertificate {
        p,
        n,
        quotient: ring.from_poly(quotient),
    })
}
