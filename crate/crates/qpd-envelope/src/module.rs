//! The based model of the q-divided-power envelope: basis symbols e_i for
//! exponent vectors i in (N[1/p^K])^r, with e_i standing for
//! prod_s Y_s^(i_s) / [floor(i_s)]_q!.  Exponents are stored as integer
//! numerators over the global denominator p^K.

use std::collections::BTreeMap;

use base_arith::{BaseElem, BaseRing, IntPoly};
use num_bigint::BigInt;
use num_traits::Zero;
use qcalc::{frobenius_q, q_int, QFactorialTable};
use serde_json::json;

use crate::error::EnvelopeError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPDModule {
    base: BaseRing,
    num_vars: usize,
    /// Degree bound as a numerator: sum of exponent numerators must stay
    /// at or below this.
    bound_num: u64,
}

impl QPDModule {
    /// A module over `base` with `num_vars` coordinates and total degree
    /// bound `degree_bound` measured in the exponent monoid (so the bound on
    /// numerators is degree_bound * p^K).
    pub fn new(base: BaseRing, num_vars: usize, degree_bound: u64) -> Self {
        assert!(num_vars >= 1, "at least one coordinate");
        assert!(degree_bound >= 1, "degree bound must be positive");
        assert!(
            base.root_depth() >= 1,
            "the envelope needs a root of q: root depth K >= 1"
        );
        let bound_num = degree_bound * base.p().pow(base.root_depth());
        QPDModule { base, num_vars, bound_num }
    }

    /// The default degree bound p^2 + p.
    pub fn with_default_bound(base: BaseRing, num_vars: usize) -> Self {
        let d = base.p() * base.p() + base.p();
        Self::new(base, num_vars, d)
    }

    pub fn base(&self) -> &BaseRing {
        &self.base
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn bound_num(&self) -> u64 {
        self.bound_num
    }

    /// The denominator p^K shared by all exponents.
    pub fn denom(&self) -> u64 {
        self.base.p().pow(self.base.root_depth())
    }

    /// floor(i_s) for one coordinate numerator.
    pub fn floor_of(&self, num: u64) -> u64 {
        num / self.denom()
    }

    /// Sum over coordinates of floor(i_s).
    pub fn floor_sum(&self, nums: &[u64]) -> u64 {
        nums.iter().map(|&n| self.floor_of(n)).sum()
    }

    /// All exponent vectors within the degree bound, sorted.
    pub fn basis_exponents(&self) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut current = vec![0u64; self.num_vars];
        self.enumerate(0, self.bound_num, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate(&self, pos: usize, budget: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if pos == self.num_vars {
            out.push(current.clone());
            return;
        }
        for v in 0..=budget {
            current[pos] = v;
            self.enumerate(pos + 1, budget - v, current, out);
        }
        current[pos] = 0;
    }

    fn check_bound(&self, nums: &[u64]) -> Result<(), EnvelopeError> {
        assert_eq!(nums.len(), self.num_vars);
        if nums.iter().sum::<u64>() > self.bound_num {
            return Err(EnvelopeError::DegreeOverflow {
                exponent_num: nums.to_vec(),
                bound_num: self.bound_num,
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> QPDElem {
        QPDElem { module: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> QPDElem {
        self.from_coeff(self.base.one())
    }

    pub fn from_coeff(&self, c: BaseElem) -> QPDElem {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u64; self.num_vars], c);
        }
        QPDElem { module: self.clone(), terms }
    }

    /// The basis element e_i with the given exponent numerators.
    pub fn basis_elem(&self, nums: &[u64]) -> Result<QPDElem, EnvelopeError> {
        self.check_bound(nums)?;
        let mut terms = BTreeMap::new();
        terms.insert(nums.to_vec(), self.base.one());
        Ok(QPDElem { module: self.clone(), terms })
    }

    /// [p]_q inside the base ring.
    pub fn p_analog(&self) -> BaseElem {
        self.base.from_q_poly(&q_int(self.base.p()))
    }

    /// Exact Z[t] lift of [p]_q: the geometric sum evaluated at t^(p^K).
    pub fn p_analog_lift(&self) -> IntPoly {
        lift_at_root(&q_int(self.base.p()), self.base.p().pow(self.base.root_depth()))
    }

    /// [p]_{q^(1/p)} inside the base ring (needs K >= 1).
    pub fn p_analog_root(&self) -> BaseElem {
        self.base.from_t_poly(&self.p_analog_root_lift())
    }

    /// Exact Z[t] lift of [p]_{q^(1/p)}: the geometric sum at t^(p^(K-1)).
    pub fn p_analog_root_lift(&self) -> IntPoly {
        let k = self.base.root_depth();
        lift_at_root(&q_int(self.base.p()), self.base.p().pow(k - 1))
    }

    /// The structure constant of e_a * e_b as an exact polynomial in Z[q]:
    /// prod_s [floor(a_s + b_s)]_q! / ([floor(a_s)]_q! [floor(b_s)]_q!).
    pub fn structure_constant(&self, a: &[u64], b: &[u64]) -> Result<IntPoly, EnvelopeError> {
        let mut acc = IntPoly::one(qcalc::q_vars());
        for s in 0..self.num_vars {
            let fa = self.floor_of(a[s]);
            let fb = self.floor_of(b[s]);
            let fab = self.floor_of(a[s] + b[s]);
            let denominator = qcalc::q_factorial(fa).mul(&qcalc::q_factorial(fb));
            let c = qcalc::q_factorial(fab).exact_div(&denominator).map_err(|rem| {
                EnvelopeError::NotDivisible {
                    context: "structure_constant",
                    remainder: rem.to_string(),
                }
            })?;
            acc = acc.mul(&c);
        }
        Ok(acc)
    }

    /// The Frobenius multiplier for one exponent coordinate, as an exact
    /// polynomial in Z[q]: lambda = [floor(i p)]_q! / phi([floor(i)]_q!).
    /// Asserts the multiplicative identity lambda = [p]_q^floor(i) * unit.
    pub fn frobenius_multiplier(&self, num: u64) -> Result<IntPoly, EnvelopeError> {
        let p = self.base.p();
        let fi = self.floor_of(num);
        let fip = (num * p) / self.denom();
        let lambda = qcalc::q_factorial(fip)
            .exact_div(&frobenius_q(&qcalc::q_factorial(fi), p))
            .map_err(|rem| EnvelopeError::NotDivisible {
                context: "frobenius_multiplier",
                remainder: rem.to_string(),
            })?;
        let unit = lambda
            .exact_div(&q_int(p).pow(fi as u32))
            .expect("lambda must be [p]_q^floor(i) times a unit");
        let at_one = unit.eval_int(&[BigInt::from(1)]);
        assert!(
            !(at_one % BigInt::from(p)).is_zero(),
            "Frobenius unit cofactor is not a unit at q=1"
        );
        Ok(lambda)
    }

    /// Shared factorial cache sized for Frobenius images within the bound.
    pub(crate) fn factorial_table(&self) -> QFactorialTable {
        let top = (self.bound_num * self.base.p()) / self.denom();
        QFactorialTable::new(self.base.p(), top)
    }
}

/// Evaluate a polynomial in q at q = t^scale, producing a polynomial in t.
pub(crate) fn lift_at_root(f: &IntPoly, scale: u64) -> IntPoly {
    let tv = qcalc::t_vars();
    let image = IntPoly::monomial(tv.clone(), vec![scale as u32], BigInt::from(1));
    f.subst(tv, &[image])
}

/// A sparse element: finitely many basis coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPDElem {
    module: QPDModule,
    terms: BTreeMap<Vec<u64>, BaseElem>,
}

impl QPDElem {
    pub fn module(&self) -> &QPDModule {
        &self.module
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &BaseElem)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, nums: &[u64]) -> BaseElem {
        self.terms
            .get(nums)
            .cloned()
            .unwrap_or_else(|| self.module.base.zero())
    }

    fn check_module(&self, other: &QPDElem) {
        assert!(self.module == other.module, "elements of different modules");
    }

    fn insert_add(terms: &mut BTreeMap<Vec<u64>, BaseElem>, key: Vec<u64>, val: BaseElem) {
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

    pub fn add(&self, other: &QPDElem) -> QPDElem {
        self.check_module(other);
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            Self::insert_add(&mut terms, k.clone(), v.clone());
        }
        QPDElem { module: self.module.clone(), terms }
    }

    pub fn neg(&self) -> QPDElem {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v.neg()))
            .collect();
        QPDElem { module: self.module.clone(), terms }
    }

    pub fn sub(&self, other: &QPDElem) -> QPDElem {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &BaseElem) -> QPDElem {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            let w = v.mul(c);
            if !w.is_zero() {
                terms.insert(k.clone(), w);
            }
        }
        QPDElem { module: self.module.clone(), terms }
    }

    /// Basis product law: e_a e_b = c e_(a+b) with c the exact factorial
    /// quotient reduced into the base ring.
    pub fn mul(&self, other: &QPDElem) -> Result<QPDElem, EnvelopeError> {
        self.check_module(other);
        let module = &self.module;
        let mut terms = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let sum: Vec<u64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                module.check_bound(&sum)?;
                let c = module.structure_constant(a, b)?;
                let coeff = ca.mul(cb).mul(&module.base.from_q_poly(&c));
                Self::insert_add(&mut terms, sum, coeff);
            }
        }
        Ok(QPDElem { module: module.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Result<QPDElem, EnvelopeError> {
        let mut acc = self.module.one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// phi(e_i) = (prod_s lambda_s) e_(p i), coefficients pushed through the
    /// base Frobenius t |-> t^p.
    pub fn frobenius(&self) -> Result<QPDElem, EnvelopeError> {
        let module = &self.module;
        let p = module.base.p();
        let mut terms = BTreeMap::new();
        for (nums, c) in &self.terms {
            let target: Vec<u64> = nums.iter().map(|&x| x * p).collect();
            module.check_bound(&target)?;
            let mut lambda = IntPoly::one(qcalc::q_vars());
            for &num in nums {
                lambda = lambda.mul(&module.frobenius_multiplier(num)?);
            }
            let coeff = c.frobenius().mul(&module.base.from_q_poly(&lambda));
            Self::insert_add(&mut terms, target, coeff);
        }
        Ok(QPDElem { module: module.clone(), terms })
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "module": {
                "p": self.module.base.p(),
                "prec_p": self.module.base.prec_p(),
                "prec_t": self.module.base.prec_t(),
                "root_depth": self.module.base.root_depth(),
                "num_vars": self.module.num_vars,
                "bound_num": self.module.bound_num,
            },
            "terms": self
                .terms
                .iter()
                .map(|(k, v)| json!({ "exponent_num": k, "coeff": v.to_json() }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Tensor product along the common base: coordinates concatenate and the
/// degree bounds add.
pub fn kunneth_product(a: &QPDModule, b: &QPDModule) -> Result<QPDModule, EnvelopeError> {
    if a.base != b.base {
        return Err(EnvelopeError::MixedBases);
    }
    Ok(QPDModule {
        base: a.base.clone(),
        num_vars: a.num_vars + b.num_vars,
        bound_num: a.bound_num + b.bound_num,
    })
}
