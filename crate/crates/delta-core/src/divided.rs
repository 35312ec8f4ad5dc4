//! Constructive divided-power certificates.
//!
//! Working in the model `ℚ{x} = ℚ[w_0, w_1, ...]` with `w_j = φ^j(x)`, the
//! subring generated over `ℤ_(p)` by `{δ^j(x)} ∪ {δ^j(z)}`, `z = φ(x)/p`,
//! is the divided-power envelope of `(x)`.  Every generator is
//! weight-homogeneous for the grading `w_j ↦ p^j` (namely `δ^j(x)` has
//! weight `p^j` and `δ^j(z)` weight `p^(j+1)`), and so is the target
//! `γ_n(x) = x^n/n!` (weight `n`).  A p-integral expression for the scaled
//! power `h_k = x^(p^k)/p^(e_k)`, `e_k = (p^k-1)/(p-1)`, therefore exists
//! within the finitely many generator monomials of weight exactly `p^k`,
//! and is found by exact linear algebra over `ℤ_(p)`.  Writing `n` in base
//! p as `Σ n_k·p^k` gives `γ_n = u_n·Π h_k^(n_k)` with
//! `u_n = p^(v_p(n!))/n!` a p-adic unit, by Legendre's formula.
//!
//! Every certificate is re-verified by exact rational substitution back
//! into the `w`-model before being returned.

use std::sync::Arc;

use base_arith::{solve_local, varset, vp_rat, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;

use crate::error::DeltaError;

/// A certified expression of `γ_n(x) = x^n/n!` as a p-integral polynomial
/// in the generators `δ^j(x)` and `δ^j(φ(x)/p)`.
#[derive(Clone, Debug)]
pub struct DividedPowerCertificate {
    pub p: u64,
    pub n: u32,
    /// Base-p digits of `n`, least significant first.
    pub digits: Vec<u32>,
    /// The p-adic unit `p^(v_p(n!))/n!` scaling the product of the `h_k`.
    pub unit: BigRational,
    /// Names of the generator symbols the certificate polynomial lives in.
    pub gen_names: Arc<Vec<String>>,
    /// The certificate polynomial; substituting the generator expansions
    /// reproduces `x^n/n!` exactly (checked before construction).
    pub poly: RatPoly,
}

impl DividedPowerCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .poly
            .terms()
            .map(|(exps, c)| {
                json!({
                    "exponents": exps,
                    "numer": c.numer().to_string(),
                    "denom": c.denom().to_string(),
                })
            })
            .collect();
        json!({
            "p": self.p,
            "n": self.n,
            "digits": self.digits,
            "unit": { "numer": self.unit.numer().to_string(),
                      "denom": self.unit.denom().to_string() },
            "generators": self.gen_names.as_ref().clone(),
            "terms": terms,
        })
    }
}

/// The rational model: expansions of the generators inside `ℚ[w_0..w_J]`.
struct Model {
    p: u64,
    levels: usize,
    wvars: Arc<Vec<String>>,
    gvars: Arc<Vec<String>>,
    gen_weights: Vec<u64>,
    gen_expansions: Vec<RatPoly>,
}

impl Model {
    fn build(p: u64, levels: usize) -> Model {
        let wnames: Vec<String> = (0..=levels + 1).map(|j| format!("w{j}")).collect();
        let wvars = varset(wnames);
        let mut gnames: Vec<String> = Vec::new();
        for j in 0..=levels {
            gnames.push(match j {
                0 => "x".to_string(),
                1 => "dx".to_string(),
                j => format!("d{j}x"),
            });
        }
        for j in 0..levels {
            gnames.push(match j {
                0 => "z".to_string(),
                1 => "dz".to_string(),
                j => format!("d{j}z"),
            });
        }
        let gvars = varset(gnames);

        let mut model = Model {
            p,
            levels,
            wvars: wvars.clone(),
            gvars,
            gen_weights: Vec::new(),
            gen_expansions: Vec::new(),
        };

        // δ^j(x): start from w_0.
        let mut a = RatPoly::var(wvars.clone(), 0);
        for j in 0..=levels {
            model.gen_weights.push(p.pow(j as u32));
            model.gen_expansions.push(a.clone());
            if j < levels {
                a = model.delta_w(&a);
            }
        }
        // δ^j(z) with z = φ(x)/p = w_1/p.
        if levels > 0 {
            let mut b = RatPoly::var(wvars.clone(), 1)
                .mul_coeff(&BigRational::new(BigInt::one(), BigInt::from(p)));
            for j in 0..levels {
                model.gen_weights.push(p.pow(j as u32 + 1));
                model.gen_expansions.push(b.clone());
                if j + 1 < levels {
                    b = model.delta_w(&b);
                }
            }
        }
        model
    }

    /// The Frobenius `w_j ↦ w_(j+1)` of the model.
    fn phi_w(&self, f: &RatPoly) -> RatPoly {
        let last = self.wvars.len() - 1;
        assert_eq!(
            f.degree_in(last).unwrap_or(0),
            0,
            "shift would overflow the w-variable window"
        );
        let images: Vec<RatPoly> = (0..self.wvars.len())
            .map(|j| {
                if j < last {
                    RatPoly::var(self.wvars.clone(), j + 1)
                } else {
                    RatPoly::zero(self.wvars.clone())
                }
            })
            .collect();
        f.subst(self.wvars.clone(), &images)
    }

    /// `δ(f) = (φ(f) - f^p)/p` as exact rational arithmetic; on the
    /// δ-stable subring this agrees with the true δ because the model ring
    /// is p-torsionfree.
    fn delta_w(&self, f: &RatPoly) -> RatPoly {
        let inv_p = BigRational::new(BigInt::one(), BigInt::from(self.p));
        self.phi_w(f).sub(&f.pow(self.p as u32)).mul_coeff(&inv_p)
    }

    /// Expand a generator monomial into the `w`-model.
    fn expand(&self, exps: &[u32]) -> RatPoly {
        let mut acc = RatPoly::one(self.wvars.clone());
        for (s, e) in exps.iter().enumerate() {
            if *e > 0 {
                acc = acc.mul(&self.gen_expansions[s].pow(*e));
            }
        }
        acc
    }

    /// Express `h_k = x^(p^k)/p^(e_k)` as a p-integral polynomial in the
    /// generators, by solving the weight-`p^k` linear system over `ℤ_(p)`.
    fn express_h(&self, k: usize) -> Result<RatPoly, DeltaError> {
        assert!(k <= self.levels);
        if k == 0 {
            return Ok(RatPoly::var(self.gvars.clone(), 0));
        }
        let weight = self.p.pow(k as u32);
        let e_k = (weight - 1) / (self.p - 1);
        let target = RatPoly::monomial(
            self.wvars.clone(),
            {
                let mut e = vec![0u32; self.wvars.len()];
                e[0] = weight as u32;
                e
            },
            BigRational::new(BigInt::one(), BigInt::from(self.p).pow(e_k as u32)),
        );

        let candidates = monomials_of_weight(&self.gen_weights, weight);
        let columns: Vec<RatPoly> = candidates.iter().map(|c| self.expand(c)).collect();

        // Assemble the row space from every monomial that appears.
        let mut row_index: std::collections::BTreeMap<Vec<u32>, usize> =
            std::collections::BTreeMap::new();
        for poly in columns.iter().chain(std::iter::once(&target)) {
            for (exps, _) in poly.terms() {
                let next = row_index.len();
                row_index.entry(exps.clone()).or_insert(next);
            }
        }
        let rows = row_index.len();
        let mut matrix = vec![vec![BigRational::zero(); columns.len()]; rows];
        for (c, poly) in columns.iter().enumerate() {
            for (exps, coeff) in poly.terms() {
                matrix[row_index[exps]][c] = coeff.clone();
            }
        }
        let mut rhs = vec![BigRational::zero(); rows];
        for (exps, coeff) in target.terms() {
            rhs[row_index[exps]] = coeff.clone();
        }

        let p_big = BigInt::from(self.p);
        let sol = solve_local(&p_big, &matrix, &rhs).ok_or_else(|| {
            DeltaError::NonIntegralCoefficient {
                monomial: format!("x^{weight}/p^{e_k}"),
                coeff: "no p-integral representation exists".to_string(),
            }
        })?;

        let mut expr = RatPoly::zero(self.gvars.clone());
        for (c, value) in sol.iter().enumerate() {
            if !value.is_zero() {
                expr = expr.add(&RatPoly::monomial(
                    self.gvars.clone(),
                    candidates[c].clone(),
                    value.clone(),
                ));
            }
        }
        // Exact re-verification of the solve.
        let recombined = self.substitute(&expr);
        assert_eq!(recombined, target, "defect: h_{k} expression fails exact verification");
        Ok(expr)
    }

    /// Substitute the generator expansions into a polynomial over `gvars`.
    fn substitute(&self, f: &RatPoly) -> RatPoly {
        f.subst(self.wvars.clone(), &self.gen_expansions)
    }
}

/// All exponent vectors of the given weighted total degree.
fn monomials_of_weight(weights: &[u64], target: u64) -> Vec<Vec<u32>> {
    fn rec(
        weights: &[u64],
        idx: usize,
        remaining: u64,
        current: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
    ) {
        if idx == weights.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        let w = weights[idx];
        for e in 0..=(remaining / w) {
            current.push(e as u32);
            rec(weights, idx + 1, remaining - e * w, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, target, &mut Vec::new(), &mut out);
    out
}

fn factorial(n: u32) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n as u64 {
        acc *= BigInt::from(k);
    }
    acc
}

/// `v_p(n!)` by Legendre's formula.
fn legendre_vp_factorial(p: u64, n: u32) -> u32 {
    let mut total = 0u32;
    let mut q = n as u64 / p;
    while q > 0 {
        total += q as u32;
        q /= p;
    }
    total
}

/// Produce the certificate that `γ_n(x) = x^n/n!` lies in the subring
/// generated by `δ^j(x)` and `δ^j(φ(x)/p)` with p-integral coefficients.
pub fn divided_power_certificate(
    p: u64,
    n: u32,
) -> Result<DividedPowerCertificate, DeltaError> {
    assert!(p == 2 || p == 3, "certificates are produced for p = 2, 3 only");
    assert!(
        (n as u64) <= p * p * p,
        "certificates are produced for n <= p^3 only"
    );

    // Base-p digits, least significant first.
    let mut digits: Vec<u32> = Vec::new();
    let mut rest = n as u64;
    while rest > 0 {
        digits.push((rest % p) as u32);
        rest /= p;
    }
    let levels = digits.len().saturating_sub(1);
    let model = Model::build(p, levels);

    let unit = BigRational::new(
        BigInt::from(p).pow(legendre_vp_factorial(p, n)),
        factorial(n),
    );
    assert!(
        vp_rat(&unit, &BigInt::from(p)) == 0,
        "defect: u_n must be a p-adic unit"
    );

    let mut poly = RatPoly::one(model.gvars.clone()).mul_coeff(&unit);
    for (k, digit) in digits.iter().enumerate() {
        if *digit > 0 {
            let h_k = model.express_h(k)?;
            poly = poly.mul(&h_k.pow(*digit));
        }
    }

    // Certify p-integrality of every coefficient.
    for (exps, coeff) in poly.terms() {
        if vp_rat(coeff, &BigInt::from(p)) < 0 {
            return Err(DeltaError::NonIntegralCoefficient {
                monomial: render_monomial(&model.gvars, exps),
                coeff: coeff.to_string(),
            });
        }
    }

    // Exact global verification: the certificate reproduces x^n/n!.
    let target = RatPoly::monomial(
        model.wvars.clone(),
        {
            let mut e = vec![0u32; model.wvars.len()];
            e[0] = n;
            e
        },
        BigRational::new(BigInt::one(), factorial(n)),
    );
    let recombined = model.substitute(&poly);
    assert_eq!(
        recombined, target,
        "defect: divided-power certificate fails exact verification"
    );

    Ok(DividedPowerCertificate {
        p,
        n,
        digits,
        unit,
        gen_names: model.gvars.clone(),
        poly,
    })
}

fn render_monomial(vars: &Arc<Vec<String>>, exps: &[u32]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, e) in exps.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars[i].clone()),
            e => parts.push(format!("{}^{}", vars[i], e)),
        }
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// The p-adic unit `u` with `γ_2p(x) = u·γ_2(γ_p(x))`, computed by
/// comparing both sides inside the rational model.  Also checks that `u`
/// is a unit in `ℤ_(p)`.
pub fn gamma_2p_unit(p: u64) -> BigRational {
    let cert_p = divided_power_certificate(p, p as u32)
        .expect("gamma_p certificate must exist");
    let model = Model::build(p, cert_p.digits.len().saturating_sub(1));
    let gamma_p_w = model.substitute(&cert_p.poly);
    // γ_2(γ_p(x)) = γ_p(x)^2 / 2.
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let rhs = gamma_p_w.pow(2).mul_coeff(&half);
    let target = RatPoly::monomial(
        model.wvars.clone(),
        {
            let mut e = vec![0u32; model.wvars.len()];
            e[0] = 2 * p as u32;
            e
        },
        BigRational::new(BigInt::one(), factorial(2 * p as u32)),
    );
    // Both sides are single monomials in w_0; the ratio of coefficients is u.
    assert_eq!(rhs.num_terms(), 1, "gamma_2(gamma_p) should be a single monomial");
    let rhs_coeff = rhs.terms().next().expect("nonempty").1.clone();
    let target_coeff = target.terms().next().expect("nonempty").1.clone();
    let u = target_coeff / rhs_coeff;
    assert!(u.is_positive());
    assert_eq!(
        vp_rat(&u, &BigInt::from(p)),
        0,
        "defect: the gamma_2p comparison unit must be a p-adic unit"
    );
    // Final identity check: u · γ_2(γ_p(x)) = γ_2p(x).
    assert_eq!(rhs.mul_coeff(&u), target);
    u
}
