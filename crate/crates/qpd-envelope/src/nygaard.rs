//! Nygaard filtration on the envelope and the divisibility audit for its
//! graded pieces.
//!
//! Fil^n is generated by [p]_{q^(1/p)}^max(0, n - S(i)) e_i where
//! S(i) = sum_s floor(i_s).  Applying the Frobenius turns the root analog
//! into [p]_q, so every generator must land in [p]_q^n times the module;
//! the audit performs that division exactly on Z[t] lifts, records which
//! image summands survive modulo [p]_q, and compares the surviving degrees
//! against an independently enumerated conjugate-filtration subgrid.

use std::collections::HashMap;

use base_arith::IntPoly;
use num_bigint::BigInt;
use num_traits::Zero;
use qcalc::frobenius_q;
use serde_json::json;

use crate::error::EnvelopeError;
use crate::module::{lift_at_root, QPDModule};

/// One generator of Fil^n: a [p]_{q^(1/p)} power times a basis symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NygaardGenerator {
    pub exponent_num: Vec<u64>,
    pub power: u32,
    pub coeff: base_arith::BaseElem,
}

/// Audit record for one basis exponent at level n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NygaardRow {
    pub exponent_num: Vec<u64>,
    pub floor_sum: u64,
    pub power: u32,
    /// phi(generator) is exactly divisible by [p]_q^n.
    pub divisible: bool,
    /// The quotient is not divisible by one more [p]_q factor (exact lift).
    pub survives_exact: bool,
    /// The quotient reduces to a unit of the truncated base ring.
    pub survives_truncated: bool,
    /// For survivors: the quotient evaluated at t = 1 (a unit certificate).
    pub unit_at_one: Option<BigInt>,
    /// For rows with a positive generator power: dividing with one fewer
    /// [p]_{q^(1/p)} factor must fail, so the power is minimal.
    pub minimality_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NygaardReport {
    pub p: u64,
    pub root_depth: u32,
    pub num_vars: usize,
    pub bound_num: u64,
    pub n: u64,
    pub rows: Vec<NygaardRow>,
    /// Independently enumerated: grid points divisible by p in every
    /// coordinate, within p times the degree bound, whose conjugate level
    /// sum_s (j_s div p^(K+1)) is at most n.
    pub conjugate_subgrid: Vec<Vec<u64>>,
    pub image_matches_conjugate: bool,
    pub all_ok: bool,
}

impl NygaardReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p,
            "root_depth": self.root_depth,
            "num_vars": self.num_vars,
            "bound_num": self.bound_num,
            "n": self.n,
            "rows": self.rows.iter().map(|r| json!({
                "exponent_num": r.exponent_num,
                "floor_sum": r.floor_sum,
                "power": r.power,
                "divisible": r.divisible,
                "survives_exact": r.survives_exact,
                "survives_truncated": r.survives_truncated,
                "unit_at_one": r.unit_at_one.as_ref().map(|v| v.to_string()),
                "minimality_ok": r.minimality_ok,
            })).collect::<Vec<_>>(),
            "conjugate_subgrid": self.conjugate_subgrid,
            "image_matches_conjugate": self.image_matches_conjugate,
            "all_ok": self.all_ok,
        })
    }
}

struct RowInput<'a> {
    module: &'a QPDModule,
    lambda: &'a HashMap<u64, IntPoly>,
    lq_lift: &'a IntPoly,
    lq_pow_n: &'a IntPoly,
    n: u64,
}

impl QPDModule {
    /// The degree bound in whole units (bound_num / p^K).
    pub fn degree_bound(&self) -> u64 {
        self.bound_num() / self.denom()
    }

    /// Generators of Fil^n: one per basis exponent, sorted.
    pub fn nygaard_filtration(&self, n: u64) -> Vec<NygaardGenerator> {
        let root = self.p_analog_root();
        self.basis_exponents()
            .into_iter()
            .map(|nums| {
                let s = self.floor_sum(&nums);
                let power = n.saturating_sub(s) as u32;
                NygaardGenerator {
                    exponent_num: nums,
                    power,
                    coeff: root.pow(power),
                }
            })
            .collect()
    }

    /// The conjugate filtration on the module's own grid: exponents whose
    /// level sum_s (num_s div p^(K+1)) is at most n, sorted.
    pub fn conjugate_filtration(&self, n: u64) -> Vec<Vec<u64>> {
        let step = self.denom() * self.base().p();
        self.basis_exponents()
            .into_iter()
            .filter(|nums| nums.iter().map(|&x| x / step).sum::<u64>() <= n)
            .collect()
    }

    fn lambda_cache(&self) -> Result<HashMap<u64, IntPoly>, EnvelopeError> {
        let table = self.factorial_table();
        let p = self.base().p();
        let mut cache = HashMap::new();
        for num in 0..=self.bound_num() {
            let fi = self.floor_of(num);
            let fip = (num * p) / self.denom();
            let lambda = table
                .factorial(fip)
                .exact_div(&frobenius_q(table.factorial(fi), p))
                .map_err(|rem| EnvelopeError::NotDivisible {
                    context: "nygaard lambda",
                    remainder: rem.to_string(),
                })?;
            cache.insert(num, lambda);
        }
        Ok(cache)
    }

    fn row(input: &RowInput, nums: Vec<u64>) -> NygaardRow {
        let module = input.module;
        let denom = module.denom();
        let s = module.floor_sum(&nums);
        let power = input.n.saturating_sub(s) as u32;

        // Exact Z[t] coefficient of the Frobenius image of the generator:
        // [p]_q^power * prod_s lambda(i_s), all lifted along q = t^(p^K).
        let mut lambda_q = IntPoly::one(qcalc::q_vars());
        for &num in &nums {
            lambda_q = lambda_q.mul(&input.lambda[&num]);
        }
        let lambda_t = lift_at_root(&lambda_q, denom);
        let total = input.lq_lift.pow(power).mul(&lambda_t);

        let mut row = NygaardRow {
            exponent_num: nums,
            floor_sum: s,
            power,
            divisible: false,
            survives_exact: false,
            survives_truncated: false,
            unit_at_one: None,
            minimality_ok: None,
        };
        let quotient = match total.exact_div(input.lq_pow_n) {
            Ok(q) => q,
            Err(_) => return row,
        };
        row.divisible = true;
        row.survives_exact = quotient.exact_div(input.lq_lift).is_err();
        let truncated = module.base().from_t_poly(&quotient);
        row.survives_truncated = truncated.is_unit();
        if row.survives_exact {
            row.unit_at_one = Some(quotient.eval_int(&[BigInt::from(1)]));
        }
        if power > 0 {
            let smaller = input.lq_lift.pow(power - 1).mul(&lambda_t);
            row.minimality_ok = Some(smaller.exact_div(input.lq_pow_n).is_err());
        }
        row
    }

    fn finish_report(&self, n: u64, mut rows: Vec<NygaardRow>) -> NygaardReport {
        let p = self.base().p();
        rows.sort_by(|a, b| a.exponent_num.cmp(&b.exponent_num));

        let mut image: Vec<Vec<u64>> = rows
            .iter()
            .filter(|r| r.survives_exact)
            .map(|r| r.exponent_num.iter().map(|&x| x * p).collect())
            .collect();
        image.sort();

        let conjugate_subgrid = self.conjugate_subgrid_on_image(n);
        let image_matches_conjugate = image == conjugate_subgrid;
        let all_ok =
            rows.iter().all(|r| row_checks(r, p, n)) && image_matches_conjugate;

        NygaardReport {
            p,
            root_depth: self.base().root_depth(),
            num_vars: self.num_vars(),
            bound_num: self.bound_num(),
            n,
            rows,
            conjugate_subgrid,
            image_matches_conjugate,
            all_ok,
        }
    }

    /// The conjugate filtration restricted to the p-divisible subgrid on
    /// the image side (degrees up to p times the bound), enumerated from
    /// scratch, sorted.
    fn conjugate_subgrid_on_image(&self, n: u64) -> Vec<Vec<u64>> {
        let p = self.base().p();
        let budget = self.bound_num() * p;
        let step_cj = self.denom() * p;
        let mut out = Vec::new();
        let mut current = vec![0u64; self.num_vars()];
        enumerate_multiples(p, budget, 0, &mut current, &mut out);
        out.retain(|nums| nums.iter().map(|&x| x / step_cj).sum::<u64>() <= n);
        out.sort();
        out
    }

    /// Audit Fil^n; dispatches to the data-parallel row loop when the
    /// `parallel` feature is enabled.
    pub fn nygaard_verify(&self, n: u64) -> Result<NygaardReport, EnvelopeError> {
        #[cfg(feature = "parallel")]
        {
            self.nygaard_verify_impl(n, true)
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.nygaard_verify_impl(n, false)
        }
    }

    /// Same audit forced onto the sequential row loop.
    pub fn nygaard_verify_sequential(&self, n: u64) -> Result<NygaardReport, EnvelopeError> {
        self.nygaard_verify_impl(n, false)
    }

    fn nygaard_verify_impl(&self, n: u64, parallel: bool) -> Result<NygaardReport, EnvelopeError> {
        assert!(
            n + 1 <= self.degree_bound(),
            "level {} needs degree bound above {}",
            n,
            n + 1
        );
        let lambda = self.lambda_cache()?;
        let lq_lift = self.p_analog_lift();
        let lq_pow_n = lq_lift.pow(n as u32);
        let input = RowInput {
            module: self,
            lambda: &lambda,
            lq_lift: &lq_lift,
            lq_pow_n: &lq_pow_n,
            n,
        };
        let exponents = self.basis_exponents();
        let rows = if parallel {
            rows_parallel(&input, exponents)
        } else {
            exponents
                .into_iter()
                .map(|nums| Self::row(&input, nums))
                .collect()
        };
        Ok(self.finish_report(n, rows))
    }
}

fn row_checks(row: &NygaardRow, p: u64, n: u64) -> bool {
    let expected = row.floor_sum <= n;
    let unit_ok = match (&row.unit_at_one, expected) {
        (Some(v), true) => !(v % BigInt::from(p)).is_zero(),
        (None, false) => true,
        _ => false,
    };
    row.divisible
        && row.survives_exact == expected
        && row.survives_truncated == expected
        && unit_ok
        && row.minimality_ok.unwrap_or(true)
}

fn enumerate_multiples(p: u64, budget: u64, pos: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if pos == current.len() {
        out.push(current.clone());
        return;
    }
    let mut v = 0u64;
    while v <= budget {
        current[pos] = v;
        enumerate_multiples(p, budget - v, pos + 1, current, out);
        v += p;
    }
    current[pos] = 0;
}

#[cfg(feature = "parallel")]
fn rows_parallel(input: &RowInput, exponents: Vec<Vec<u64>>) -> Vec<NygaardRow> {
    use rayon::prelude::*;
    exponents
        .into_par_iter()
        .map(|nums| QPDModule::row(input, nums))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn rows_parallel(input: &RowInput, exponents: Vec<Vec<u64>>) -> Vec<NygaardRow> {
    exponents
        .into_iter()
        .map(|nums| QPDModule::row(input, nums))
        .collect()
}
