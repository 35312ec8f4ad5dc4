//! Framed polynomial and Laurent algebras over the truncated base ring,
//! with the coordinate scalings γ_s and the q-derivations ∇_{q,s}.
//!
//! Elements are finite Laurent polynomials inside a degree window [−W, W]
//! (degrees [0, W] for non-Laurent generators); products re-entering the
//! window are kept and the rest is truncated, with boundary damage
//! quarantined later by the two-window stable-core protocol.
//!
//! A framing coordinate is either the generator itself or a substituted
//! unit perturbation σ(x) = Σ c_k x^k whose coefficient at x¹ is a unit
//! and whose other coefficients lie in the maximal ideal (p, q−1).  The
//! scaling γ_s multiplies the framing coordinate by q; on elements this is
//! realized by passing through the coordinate basis: expand in powers of
//! the framing coordinate (via the composition inverse τ of σ, found by
//! nilpotent fixed-point iteration), scale or shift there, and re-expand.
//! The q-derivation in the coordinate basis is the exact shift
//! X^n ↦ [n]_q X^{n−1}, so no division ever happens inside the truncation.

use std::collections::BTreeMap;

use base_arith::{BaseElem, BaseRing};
use qcalc::q_int;

use crate::error::DerhamError;

/// Univariate windowed Laurent polynomial with base coefficients.
pub(crate) type UniPoly = BTreeMap<i64, BaseElem>;

#[derive(Debug, Clone, PartialEq)]
pub enum Framing {
    /// The framing coordinate is the generator itself.
    Standard,
    /// The framing coordinate σ(x) expressed in this coordinate's own
    /// generator: exponent ↦ coefficient.
    Substituted(UniPoly),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FramedAlgebra {
    base: BaseRing,
    gens: Vec<(String, bool)>,
    framings: Vec<Framing>,
    window: i64,
}

impl FramedAlgebra {
    pub fn new(
        base: BaseRing,
        gens: Vec<(String, bool)>,
        framings: Vec<Framing>,
        window: i64,
    ) -> Result<Self, DerhamError> {
        if gens.is_empty() || gens.len() > 3 {
            return Err(DerhamError::InvalidFraming {
                reason: format!("need between 1 and 3 generators, got {}", gens.len()),
            });
        }
        if framings.len() != gens.len() {
            return Err(DerhamError::InvalidFraming {
                reason: "one framing expression per generator".into(),
            });
        }
        if window < 1 {
            return Err(DerhamError::InvalidFraming {
                reason: "window must be at least 1".into(),
            });
        }
        let algebra = FramedAlgebra { base, gens, framings, window };
        for s in 0..algebra.gens.len() {
            algebra.validate_framing(s)?;
        }
        Ok(algebra)
    }

    /// All-standard framing over the given generators.
    pub fn standard(
        base: BaseRing,
        gens: &[(&str, bool)],
        window: i64,
    ) -> Result<Self, DerhamError> {
        let gens: Vec<(String, bool)> = gens
            .iter()
            .map(|(s, l)| (s.to_string(), *l))
            .collect();
        let framings = vec![Framing::Standard; gens.len()];
        Self::new(base, gens, framings, window)
    }

    fn validate_framing(&self, s: usize) -> Result<(), DerhamError> {
        let expr = match &self.framings[s] {
            Framing::Standard => return Ok(()),
            Framing::Substituted(e) => e,
        };
        let laurent = self.gens[s].1;
        match expr.get(&1) {
            None => {
                return Err(DerhamError::InvalidFraming {
                    reason: "substitution needs a linear term".into(),
                })
            }
            Some(c) => {
                if !c.is_unit() {
                    return Err(DerhamError::InvalidFraming {
                        reason: "linear coefficient must be a unit".into(),
                    });
                }
            }
        }
        for (&k, c) in expr {
            if c.is_zero() {
                continue;
            }
            if k < 0 && !laurent {
                return Err(DerhamError::InvalidFraming {
                    reason: "negative exponents need a Laurent generator".into(),
                });
            }
            if k != 1 && c.is_unit() {
                return Err(DerhamError::InvalidFraming {
                    reason: format!(
                        "coefficient at exponent {k} must lie in the maximal ideal"
                    ),
                });
            }
        }
        // Jacobian of the coordinate change: σ'(x) = Σ k c_k x^{k−1} has a
        // unit constant term (the linear coefficient) and maximal-ideal
        // coefficients elsewhere, hence is invertible in the truncation.
        let jac = derivative_uni(expr, &self.base);
        match jac.get(&0) {
            Some(c) if c.is_unit() => {}
            _ => {
                return Err(DerhamError::InvalidFraming {
                    reason: "substitution Jacobian is not invertible".into(),
                })
            }
        }
        for (&k, c) in &jac {
            if k != 0 && c.is_unit() {
                return Err(DerhamError::InvalidFraming {
                    reason: "substitution Jacobian is not invertible".into(),
                });
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn num_vars(&self) -> usize {
        self.gens.len()
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    pub fn gens(&self) -> &[(String, bool)] {
        &self.gens
    }

    pub fn framings(&self) -> &[Framing] {
        &self.framings
    }

    pub fn is_laurent(&self, s: usize) -> bool {
        self.gens[s].1
    }

    pub fn is_standard(&self) -> bool {
        self.framings.iter().all(|f| matches!(f, Framing::Standard))
    }

    /// Lower degree bound for coordinate s.
    pub fn lo(&self, s: usize) -> i64 {
        if self.is_laurent(s) {
            -self.window
        } else {
            0
        }
    }

    /// Same algebra recomputed on another window.
    pub fn with_window(&self, window: i64) -> Result<Self, DerhamError> {
        Self::new(
            self.base.clone(),
            self.gens.clone(),
            self.framings.clone(),
            window,
        )
    }

    pub fn zero(&self) -> AlgElem {
        AlgElem { algebra: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> AlgElem {
        self.from_coeff(self.base.one())
    }

    pub fn from_coeff(&self, c: BaseElem) -> AlgElem {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0i64; self.num_vars()], c);
        }
        AlgElem { algebra: self.clone(), terms }
    }

    fn in_window(&self, exps: &[i64]) -> bool {
        exps.len() == self.num_vars()
            && exps
                .iter()
                .enumerate()
                .all(|(s, &e)| e >= self.lo(s) && e <= self.window)
    }

    pub fn monomial(&self, exps: &[i64], coeff: BaseElem) -> Result<AlgElem, DerhamError> {
        if !self.in_window(exps) {
            return Err(DerhamError::WindowOverflow {
                exponent: exps.to_vec(),
                lo: -self.window,
                hi: self.window,
            });
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps.to_vec(), coeff);
        }
        Ok(AlgElem { algebra: self.clone(), terms })
    }

    /// The generator x_s.
    pub fn var(&self, s: usize) -> AlgElem {
        let mut exps = vec![0i64; self.num_vars()];
        exps[s] = 1;
        self.monomial(&exps, self.base.one())
            .expect("generator is inside any window")
    }

    /// q^n in the base ring, for any integer n.
    pub fn q_power(&self, n: i64) -> BaseElem {
        if n >= 0 {
            self.base.q().pow(n as u32)
        } else {
            self.base
                .q()
                .inv()
                .expect("q is a unit")
                .pow((-n) as u32)
        }
    }

    /// [n]_q in the base ring, for any integer n, computed from the exact
    /// integral q-integer ([−n]_q = −q^{−n}[n]_q).
    pub fn q_integer(&self, n: i64) -> BaseElem {
        if n >= 0 {
            self.base.from_q_poly(&q_int(n as u64))
        } else {
            self.base
                .from_q_poly(&q_int((-n) as u64))
                .neg()
                .mul(&self.q_power(n))
        }
    }

    /// γ_s: scale the framing coordinate X_s by q.
    pub fn gamma(&self, f: &AlgElem, s: usize) -> AlgElem {
        assert!(f.algebra == *self, "element of a different algebra");
        match &self.framings[s] {
            Framing::Standard => {
                let mut terms = BTreeMap::new();
                for (exps, c) in &f.terms {
                    let scaled = c.mul(&self.q_power(exps[s]));
                    if !scaled.is_zero() {
                        terms.insert(exps.clone(), scaled);
                    }
                }
                AlgElem { algebra: self.clone(), terms }
            }
            Framing::Substituted(_) => {
                let maps = self.coordinate_maps(s);
                self.transform_coord(f, s, &maps, CoordAction::Scale)
            }
        }
    }

    /// ∇_{q,s} = (γ_s − id)/((q−1)·X_s): the exact shift X^n ↦ [n]_q X^{n−1}
    /// in the framing-coordinate basis.
    pub fn nabla(&self, f: &AlgElem, s: usize) -> AlgElem {
        assert!(f.algebra == *self, "element of a different algebra");
        match &self.framings[s] {
            Framing::Standard => {
                let lo = self.lo(s);
                let mut terms = BTreeMap::new();
                for (exps, c) in &f.terms {
                    let n = exps[s];
                    if n - 1 < lo {
                        // [0]_q = 0 for polynomial coordinates; for Laurent
                        // ones the image leaves the window and is truncated.
                        continue;
                    }
                    let coeff = c.mul(&self.q_integer(n));
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut e = exps.clone();
                    e[s] = n - 1;
                    insert_add(&mut terms, e, coeff);
                }
                AlgElem { algebra: self.clone(), terms }
            }
            Framing::Substituted(_) => {
                let maps = self.coordinate_maps(s);
                self.transform_coord(f, s, &maps, CoordAction::Shift)
            }
        }
    }

    /// The per-coordinate basis-change data for a substituted framing.
    pub(crate) fn coordinate_maps(&self, s: usize) -> CoordMaps {
        let expr = match &self.framings[s] {
            Framing::Substituted(e) => e,
            Framing::Standard => panic!("standard framings need no coordinate maps"),
        };
        CoordMaps::build(self, s, expr)
    }

    /// Apply a diagonal/shift action through the coordinate basis on the
    /// s-degree slices of f.
    pub(crate) fn transform_coord(
        &self,
        f: &AlgElem,
        s: usize,
        maps: &CoordMaps,
        action: CoordAction,
    ) -> AlgElem {
        let lo = self.lo(s);
        let d = (self.window - lo + 1) as usize;

        // Group terms into slices along coordinate s.
        let mut slices: BTreeMap<Vec<i64>, Vec<BaseElem>> = BTreeMap::new();
        for (exps, c) in &f.terms {
            let mut rest = exps.clone();
            let e_s = rest.remove(s);
            let slot = (e_s - lo) as usize;
            let slice = slices
                .entry(rest)
                .or_insert_with(|| vec![self.base.zero(); d]);
            slice[slot] = slice[slot].add(c);
        }

        let mut terms = BTreeMap::new();
        for (rest, slice) in slices {
            // Into the coordinate basis.
            let mut w = vec![self.base.zero(); d];
            for (j, c) in slice.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (i, m) in maps.from_x[j].iter().enumerate() {
                    if !m.is_zero() {
                        w[i] = w[i].add(&m.mul(c));
                    }
                }
            }
            // Diagonal scaling or the q-integer shift.
            let acted: Vec<BaseElem> = match action {
                CoordAction::Scale => (0..d)
                    .map(|i| w[i].mul(&self.q_power(lo + i as i64)))
                    .collect(),
                CoordAction::Shift => (0..d)
                    .map(|i| {
                        if i + 1 < d {
                            w[i + 1].mul(&self.q_integer(lo + i as i64 + 1))
                        } else {
                            self.base.zero()
                        }
                    })
                    .collect(),
            };
            // Back into the generator basis.
            let mut out = vec![self.base.zero(); d];
            for (i, c) in acted.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, m) in maps.to_x[i].iter().enumerate() {
                    if !m.is_zero() {
                        out[j] = out[j].add(&m.mul(c));
                    }
                }
            }
            for (j, c) in out.into_iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut exps = rest.clone();
                exps.insert(s, lo + j as i64);
                insert_add(&mut terms, exps, c);
            }
        }
        AlgElem { algebra: self.clone(), terms }
    }

    /// Degree spread of the substitution at coordinate s: how far one
    /// correction step can move a monomial.  Zero for standard framings.
    pub fn framing_span(&self, s: usize) -> i64 {
        match &self.framings[s] {
            Framing::Standard => 0,
            Framing::Substituted(expr) => expr
                .iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(&k, _)| (k - 1).abs())
                .max()
                .unwrap_or(0),
        }
    }

    /// Margin inside which windowed transforms are exact: corrections carry
    /// maximal-ideal coefficients and die after prec_p + prec_t − 1 factors.
    pub fn interior_margin(&self, s: usize) -> i64 {
        let steps = (self.base.prec_p() + self.base.prec_t() - 1) as i64;
        self.framing_span(s) * steps
    }

    /// True when the windowed monomial level set {Σe = tau} coincides with
    /// the classical one, so nothing of that total degree was cut off.
    /// Polynomial coordinates only: the corner (tau, 0, …) forces tau ≤ W.
    /// A single Laurent coordinate has singleton level sets up to |tau| ≤ W.
    /// Two or more coordinates with a Laurent one have infinite classical
    /// level sets, which no window represents.
    pub fn grade_level_complete(&self, tau: i64) -> bool {
        let any_laurent = (0..self.num_vars()).any(|s| self.is_laurent(s));
        if !any_laurent {
            tau <= self.window
        } else if self.num_vars() == 1 {
            tau.abs() <= self.window
        } else {
            false
        }
    }

    /// True when every exponent keeps the full margin away from truncated
    /// window edges (the lower edge of a polynomial coordinate is a genuine
    /// boundary, not a truncation, so it needs no margin).
    pub fn is_interior(&self, exps: &[i64]) -> bool {
        exps.iter().enumerate().all(|(s, &e)| {
            let m = self.interior_margin(s);
            e <= self.window - m && (!self.is_laurent(s) || e >= -self.window + m)
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum CoordAction {
    Scale,
    Shift,
}

/// Expansion columns for one substituted coordinate: to_x[i] holds the
/// generator-basis coefficients of X^{lo+i}, from_x[j] those of x^{lo+j} in
/// the X-basis; both truncated to the coordinate window.
pub(crate) struct CoordMaps {
    pub to_x: Vec<Vec<BaseElem>>,
    pub from_x: Vec<Vec<BaseElem>>,
}

impl CoordMaps {
    fn build(algebra: &FramedAlgebra, s: usize, expr: &UniPoly) -> CoordMaps {
        let base = algebra.base();
        let lo = algebra.lo(s);
        let hi = algebra.window();
        let tau = invert_substitution(expr, base, lo, hi);
        CoordMaps {
            to_x: power_columns(expr, base, lo, hi),
            from_x: power_columns(&tau, base, lo, hi),
        }
    }
}

/// Columns of f^n for n in [lo, hi], each expanded on the window [lo, hi].
fn power_columns(f: &UniPoly, base: &BaseRing, lo: i64, hi: i64) -> Vec<Vec<BaseElem>> {
    let d = (hi - lo + 1) as usize;
    let mut cols: BTreeMap<i64, UniPoly> = BTreeMap::new();
    let one: UniPoly = BTreeMap::from([(0i64, base.one())]);
    cols.insert(0, one.clone());
    let mut acc = one.clone();
    for n in 1..=hi {
        acc = uni_mul(&acc, f, base, lo, hi);
        cols.insert(n, acc.clone());
    }
    if lo < 0 {
        let f_inv = uni_inverse_at(f, 1, base, lo, hi);
        let mut acc = one;
        for n in 1..=(-lo) {
            acc = uni_mul(&acc, &f_inv, base, lo, hi);
            cols.insert(-n, acc.clone());
        }
    }
    (0..d)
        .map(|j| {
            let col = &cols[&(lo + j as i64)];
            let mut v = vec![base.zero(); d];
            for (&k, c) in col {
                v[(k - lo) as usize] = c.clone();
            }
            v
        })
        .collect()
}

pub(crate) fn insert_add(
    terms: &mut BTreeMap<Vec<i64>, BaseElem>,
    key: Vec<i64>,
    val: BaseElem,
) {
    match terms.remove(&key) {
        None => {
            if !val.is_zero() {
                terms.insert(key, val);
            }
        }
        Some(old) => {
            let sum = old.add(&val);
            if !sum.is_zero() {
                terms.insert(key, sum);
            }
        }
    }
}

fn uni_insert_add(terms: &mut UniPoly, key: i64, val: BaseElem) {
    match terms.remove(&key) {
        None => {
            if !val.is_zero() {
                terms.insert(key, val);
            }
        }
        Some(old) => {
            let sum = old.add(&val);
            if !sum.is_zero() {
                terms.insert(key, sum);
            }
        }
    }
}

fn uni_mul(a: &UniPoly, b: &UniPoly, _base: &BaseRing, lo: i64, hi: i64) -> UniPoly {
    let mut out = UniPoly::new();
    for (&ka, ca) in a {
        for (&kb, cb) in b {
            let k = ka + kb;
            if k < lo || k > hi {
                continue;
            }
            uni_insert_add(&mut out, k, ca.mul(cb));
        }
    }
    out
}

fn uni_scale(a: &UniPoly, c: &BaseElem) -> UniPoly {
    let mut out = UniPoly::new();
    for (&k, v) in a {
        let w = v.mul(c);
        if !w.is_zero() {
            out.insert(k, w);
        }
    }
    out
}

fn uni_sub(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut out = a.clone();
    for (&k, v) in b {
        uni_insert_add(&mut out, k, v.neg());
    }
    out
}

pub(crate) fn derivative_uni(f: &UniPoly, base: &BaseRing) -> UniPoly {
    let mut out = UniPoly::new();
    for (&k, c) in f {
        let d = c.mul(&base.from_i64(k));
        if !d.is_zero() {
            out.insert(k - 1, d);
        }
    }
    out
}

/// Inverse of a series whose coefficient at x^pivot is a unit and whose
/// other coefficients are in the maximal ideal, via the finite geometric
/// series (the ideal is nilpotent at finite precision).
fn uni_inverse_at(f: &UniPoly, pivot: i64, base: &BaseRing, lo: i64, hi: i64) -> UniPoly {
    let c = f.get(&pivot).expect("pivot coefficient present");
    let c_inv = c.inv().expect("pivot coefficient is a unit");
    // g = f·x^{−pivot}·c^{−1} = 1 + w with w in the maximal ideal.
    let mut w = UniPoly::new();
    for (&k, v) in f {
        if k == pivot {
            continue;
        }
        let shifted = k - pivot;
        if shifted < lo || shifted > hi {
            continue;
        }
        w.insert(shifted, v.mul(&c_inv));
    }
    // (1 + w)^{−1} = Σ (−w)^k, a finite sum.
    let mut acc: UniPoly = BTreeMap::from([(0i64, base.one())]);
    let mut term: UniPoly = BTreeMap::from([(0i64, base.one())]);
    let cap = base.prec_p() + base.prec_t() + 2;
    for _ in 0..cap {
        term = uni_mul(&term, &w, base, lo, hi);
        term = uni_scale(&term, &base.from_i64(-1));
        if term.is_empty() {
            break;
        }
        for (&k, v) in &term {
            uni_insert_add(&mut acc, k, v.clone());
        }
    }
    assert!(
        uni_mul(&term, &w, base, lo, hi).is_empty() || term.is_empty(),
        "geometric series failed to terminate"
    );
    // Multiply by c^{−1}·x^{−pivot}.
    let mut out = UniPoly::new();
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

/// Composition inverse τ of the substitution σ: σ(τ(Y)) = Y, found by
/// fixed-point iteration (the corrections accumulate maximal-ideal powers,
/// so the iteration stabilizes after finitely many steps).
fn invert_substitution(expr: &UniPoly, base: &BaseRing, lo: i64, hi: i64) -> UniPoly {
    let c1 = expr.get(&1).expect("validated linear coefficient");
    let c1_inv = c1.inv().expect("validated unit");
    let mut tau: UniPoly = BTreeMap::from([(1i64, c1_inv.clone())]);
    let cap = base.prec_p() + base.prec_t() + 2;
    for _ in 0..cap {
        // next = c1^{−1}·(Y − Σ_{k≠1} c_k τ^k)
        let mut residual = UniPoly::new();
        for (&k, ck) in expr {
            if k == 1 || ck.is_zero() {
                continue;
            }
            let tk = uni_int_pow(&tau, k, base, lo, hi);
            for (&m, v) in &uni_scale(&tk, ck) {
                uni_insert_add(&mut residual, m, v.clone());
            }
        }
        let mut next: UniPoly = BTreeMap::from([(1i64, c1_inv.clone())]);
        next = uni_sub(&next, &uni_scale(&residual, &c1_inv));
        if next == tau {
            return tau;
        }
        tau = next;
    }
    panic!("framing inversion failed to stabilize");
}

fn uni_int_pow(f: &UniPoly, k: i64, base: &BaseRing, lo: i64, hi: i64) -> UniPoly {
    let positive = if k >= 0 {
        f.clone()
    } else {
        uni_inverse_at(f, 1, base, lo, hi)
    };
    let mut acc: UniPoly = BTreeMap::from([(0i64, base.one())]);
    for _ in 0..k.unsigned_abs() {
        acc = uni_mul(&acc, &positive, base, lo, hi);
    }
    acc
}

/// A windowed element: finitely many monomials with base coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgElem {
    algebra: FramedAlgebra,
    terms: BTreeMap<Vec<i64>, BaseElem>,
}

impl AlgElem {
    pub fn algebra(&self) -> &FramedAlgebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &BaseElem)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, exps: &[i64]) -> BaseElem {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.algebra.base().zero())
    }

    fn check(&self, other: &AlgElem) {
        assert!(self.algebra == other.algebra, "elements of different algebras");
    }

    pub fn add(&self, other: &AlgElem) -> AlgElem {
        self.check(other);
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            insert_add(&mut terms, k.clone(), v.clone());
        }
        AlgElem { algebra: self.algebra.clone(), terms }
    }

    pub fn neg(&self) -> AlgElem {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v.neg()))
            .collect();
        AlgElem { algebra: self.algebra.clone(), terms }
    }

    pub fn sub(&self, other: &AlgElem) -> AlgElem {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &BaseElem) -> AlgElem {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let w = v.mul(c);
            if !w.is_zero() {
                terms.insert(k.clone(), w);
            }
        }
        AlgElem { algebra: self.algebra.clone(), terms }
    }

    /// Product, truncating monomials that leave the window.
    pub fn mul(&self, other: &AlgElem) -> AlgElem {
        self.check(other);
        let algebra = &self.algebra;
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !algebra.in_window(&sum) {
                    continue;
                }
                insert_add(&mut terms, sum, ca.mul(cb));
            }
        }
        AlgElem { algebra: algebra.clone(), terms }
    }

    pub fn pow(&self, e: u32) -> AlgElem {
        let mut acc = self.algebra.one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// True when every monomial keeps the transform margin from the window
    /// edges, so γ and ∇ act without truncation error.
    pub fn is_interior(&self) -> bool {
        self.terms.keys().all(|e| self.algebra.is_interior(e))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "window": self.algebra.window,
            "terms": self
                .terms
                .iter()
                .map(|(k, v)| serde_json::json!({ "exponents": k, "coeff": v.to_json() }))
                .collect::<Vec<_>>(),
        })
    }
}
