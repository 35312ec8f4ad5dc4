//! Sparse multivariate polynomials with exact coefficient arithmetic.
//!
//! `MPoly<C>` stores a map from exponent vectors to nonzero coefficients.
//! The variable list is fixed at construction and shared by reference;
//! mixing polynomials over different variable lists is a programming error
//! and panics. Exponent vectors are ordered lexicographically (the natural
//! `Vec<u32>` order), so the last map entry is the lex-leading term.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficient domain for `MPoly`. Division is exact-or-refused; there is no
/// rounding anywhere in the workspace.
pub trait Coeff: Clone + PartialEq + Eq + fmt::Debug {
    fn c_zero() -> Self;
    fn c_one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exact division; `None` when `other` does not divide `self`.
    fn div_exact(&self, other: &Self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    fn render(&self) -> String;
}

impl Coeff for BigInt {
    fn c_zero() -> Self {
        BigInt::zero()
    }
    fn c_one() -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            return None;
        }
        let (q, r) = self.div_rem(other);
        if Zero::is_zero(&r) {
            Some(q)
        } else {
            None
        }
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Coeff for BigRational {
    fn c_zero() -> Self {
        BigRational::zero()
    }
    fn c_one() -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div_exact(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MPoly<C: Coeff> {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Vec<u32>, C>,
}

pub type IntPoly = MPoly<BigInt>;
pub type RatPoly = MPoly<BigRational>;

impl<C: Coeff> MPoly<C> {
    pub fn zero(vars: Arc<Vec<String>>) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<Vec<String>>, c: C) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            let n = p.vars.len();
            p.terms.insert(vec![0; n], c);
        }
        p
    }

    pub fn one(vars: Arc<Vec<String>>) -> Self {
        Self::constant(vars, C::c_one())
    }

    pub fn from_int(vars: Arc<Vec<String>>, v: i64) -> Self {
        Self::constant(vars, C::from_i64(v))
    }

    pub fn var(vars: Arc<Vec<String>>, idx: usize) -> Self {
        assert!(idx < vars.len(), "variable index out of range");
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        Self::monomial(vars, exps, C::c_one())
    }

    pub fn monomial(vars: Arc<Vec<String>>, exps: Vec<u32>, c: C) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<Vec<String>> {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(e, c)| e.iter().all(|&x| x == 0) && *c == C::c_one())
                .unwrap_or(false)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff_of(&self, exps: &[u32]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::c_zero)
    }

    /// Constant (all-zero exponent) coefficient.
    pub fn constant_term(&self) -> C {
        self.coeff_of(&vec![0; self.vars.len()])
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in a single variable, or `None` for the zero polynomial.
    pub fn degree_in(&self, idx: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[idx]).max()
    }

    fn check_same_vars(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars,
            "polynomials over different variable lists"
        );
    }

    fn insert_add(&mut self, exps: Vec<u32>, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_vars(other);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.vars.clone());
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_vars(other);
        let mut out = Self::zero(self.vars.clone());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert_add(exps, ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_coeff(&self, c: &C) -> Self {
        let mut out = Self::zero(self.vars.clone());
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            let prod = a.mul(c);
            if !prod.is_zero() {
                out.terms.insert(e.clone(), prod);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.vars.clone());
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

    fn leading(&self) -> Option<(&Vec<u32>, &C)> {
        self.terms.iter().next_back()
    }

    /// Exact division: returns `q` with `self = other * q`, or the partial
    /// remainder as witness when no exact quotient exists. Correctness of the
    /// early refusal: if `other` divides `self` then at every step the lex
    /// leading term of the running remainder is the product of leading terms
    /// of `other` and the residual quotient, hence divisible.
    pub fn exact_div(&self, other: &Self) -> Result<Self, Self> {
        self.check_same_vars(other);
        assert!(!other.is_zero(), "division by the zero polynomial");
        let (lt_e, lt_c) = other.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars.clone());
        while let Some((re, rc)) = rem.leading() {
            let mut qe = Vec::with_capacity(re.len());
            let mut ok = true;
            for (a, b) in re.iter().zip(lt_e) {
                if a < b {
                    ok = false;
                    break;
                }
                qe.push(a - b);
            }
            let qc = if ok { rc.div_exact(lt_c) } else { None };
            match qc {
                None => return Err(rem),
                Some(qc) => {
                    let t = Self::monomial(self.vars.clone(), qe, qc);
                    rem = rem.sub(&t.mul(other));
                    quot = quot.add(&t);
                }
            }
        }
        Ok(quot)
    }

    /// Map every coefficient; drops zero results.
    pub fn map_coeffs<D: Coeff>(&self, vars: Arc<Vec<String>>, f: impl Fn(&C) -> D) -> MPoly<D> {
        assert_eq!(vars.len(), self.vars.len());
        let mut out = MPoly::zero(vars);
        for (e, c) in &self.terms {
            let d = f(c);
            if !d.is_zero() {
                out.terms.insert(e.clone(), d);
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exps, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts: Vec<String> = Vec::new();
            let trivial = exps.iter().all(|&e| e == 0);
            if *c != C::c_one() || trivial {
                parts.push(c.render());
            }
            for (i, &e) in exps.iter().enumerate() {
                if e == 1 {
                    parts.push(self.vars[i].clone());
                } else if e > 1 {
                    parts.push(format!("{}^{}", self.vars[i], e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for MPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Render a big integer as a true JSON integer (exact at any size; the JSON
/// layer is configured for arbitrary-precision numbers).
pub fn int_to_json(n: &BigInt) -> serde_json::Value {
    serde_json::Value::Number(
        serde_json::Number::from_str(&n.to_string()).expect("integer literal is a JSON number"),
    )
}

impl IntPoly {
    /// Substitute polynomials (over a possibly different variable list) for
    /// the variables.
    pub fn subst(&self, vars: Arc<Vec<String>>, images: &[IntPoly]) -> IntPoly {
        assert_eq!(images.len(), self.vars.len());
        let mut out = IntPoly::zero(vars.clone());
        for (exps, c) in &self.terms {
            let mut term = IntPoly::constant(vars.clone(), c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Rename variables without touching exponents (lengths must match).
    pub fn with_vars(&self, vars: Arc<Vec<String>>) -> IntPoly {
        assert_eq!(vars.len(), self.vars.len());
        IntPoly {
            vars,
            terms: self.terms.clone(),
        }
    }

    pub fn eval_int(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = BigInt::zero();
        for (exps, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in exps.iter().enumerate() {
                t *= values[i].pow(e);
            }
            acc += t;
        }
        acc
    }

    /// Exact division by an integer scalar.
    pub fn div_int_exact(&self, d: &BigInt) -> Result<IntPoly, IntPoly> {
        self.exact_div(&IntPoly::constant(self.vars.clone(), d.clone()))
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Remainder of a univariate polynomial modulo a monic univariate
    /// modulus (same single variable).
    pub fn rem_monic(&self, modulus: &IntPoly) -> IntPoly {
        self.check_same_vars(modulus);
        assert_eq!(self.vars.len(), 1, "rem_monic is univariate");
        let md = modulus.degree_in(0).expect("nonzero modulus") as usize;
        assert!(
            modulus.coeff_of(&[md as u32]) == BigInt::one(),
            "modulus must be monic"
        );
        let mut rem = self.clone();
        loop {
            let d = match rem.degree_in(0) {
                None => return rem,
                Some(d) => d as usize,
            };
            if d < md {
                return rem;
            }
            let lead = rem.coeff_of(&[d as u32]);
            let shift = IntPoly::monomial(self.vars.clone(), vec![(d - md) as u32], lead);
            rem = rem.sub(&shift.mul(modulus));
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                serde_json::json!({
                    "exps": e,
                    "coeff": int_to_json(c),
                })
            })
            .collect();
        serde_json::json!({ "vars": self.vars.as_ref(), "terms": terms })
    }
}

impl RatPoly {
    pub fn from_int_poly(p: &IntPoly) -> RatPoly {
        p.map_coeffs(p.vars().clone(), |c| BigRational::from_integer(c.clone()))
    }

    /// The integer polynomial with the same terms, or `None` when a
    /// coefficient has a nontrivial denominator.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        let mut out = IntPoly::zero(self.vars.clone());
        for (e, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.terms.insert(e.clone(), c.to_integer());
        }
        Some(out)
    }

    pub fn subst(&self, vars: Arc<Vec<String>>, images: &[RatPoly]) -> RatPoly {
        assert_eq!(images.len(), self.vars.len());
        let mut out = RatPoly::zero(vars.clone());
        for (exps, c) in &self.terms {
            let mut term = RatPoly::constant(vars.clone(), c.clone());
            for (i, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Largest power of p dividing every coefficient is >= 0, i.e. no
    /// coefficient has p in its reduced denominator.
    pub fn is_p_integral(&self, p: u64) -> bool {
        let p = BigInt::from(p);
        self.terms
            .values()
            .all(|c| !Zero::is_zero(&(c.denom() % &p)))
    }
}

/// Shared variable-list constructor.
pub fn varset<S: Into<String>>(names: Vec<S>) -> Arc<Vec<String>> {
    Arc::new(names.into_iter().map(Into::into).collect())
}
