//! Certified multiplicative identities for q-factorials under the Frobenius
//! q |-> q^p, and the power-divisibility certificate for the one-variable
//! divided-power model.

use base_arith::{IntPoly, RatPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::json;

use crate::error::QcalcError;
use crate::ratgcd::rat_extended_gcd;
use crate::table::{frobenius_q, q_binomial, q_factorial, q_int};

fn eval_at_one(f: &IntPoly) -> BigInt {
    f.eval_int(&[BigInt::one()])
}

fn unit_certificate(value: &IntPoly, p: u64) -> Result<BigInt, QcalcError> {
    let at_one = eval_at_one(value);
    if (&at_one % BigInt::from(p)).is_zero() {
        return Err(QcalcError::NonUnit { value: at_one, p });
    }
    Ok(at_one)
}

/// Certificate for [mp]_q! = u * phi([m]_q!) * [p]_q^m with u a unit of
/// Z_p[[q-1]]: the exact polynomial cofactor u and its value at q = 1,
/// certified coprime to p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusFactorialCert {
    pub p: u64,
    pub m: u64,
    pub unit: IntPoly,
    pub unit_at_one: BigInt,
}

impl FrobeniusFactorialCert {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p,
            "m": self.m,
            "unit": self.unit.to_json(),
            "unit_at_one": self.unit_at_one.to_string(),
        })
    }
}

pub fn verify_frobenius_factorial(p: u64, m: u64) -> Result<FrobeniusFactorialCert, QcalcError> {
    let lhs = q_factorial(m * p);
    let rhs = frobenius_q(&q_factorial(m), p).mul(&q_int(p).pow(m as u32));
    let unit = lhs.exact_div(&rhs).map_err(|rem| QcalcError::NotDivisible {
        context: "verify_frobenius_factorial",
        remainder: rem.to_string(),
    })?;
    let unit_at_one = unit_certificate(&unit, p)?;
    Ok(FrobeniusFactorialCert { p, m, unit, unit_at_one })
}

/// Certificate for the floor identity relating [floor(i)p]_q! and
/// [floor(ip)]_q!.  Since floor(ip) >= floor(i)p always holds, the division
/// is oriented so that the quotient is an honest polynomial:
/// [floor(ip)]_q! = [floor(i)p]_q! * cofactor, with the cofactor a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorFactorialCert {
    pub p: u64,
    /// floor(i) * p.
    pub floor_i_times_p: u64,
    /// floor(i * p).
    pub floor_ip: u64,
    pub cofactor: IntPoly,
    pub cofactor_at_one: BigInt,
}

impl FloorFactorialCert {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p,
            "floor_i_times_p": self.floor_i_times_p,
            "floor_ip": self.floor_ip,
            "cofactor": self.cofactor.to_json(),
            "cofactor_at_one": self.cofactor_at_one.to_string(),
        })
    }
}

fn rational_floor_u64(x: &BigRational) -> u64 {
    x.floor().to_integer().to_u64().expect("floor fits in u64")
}

pub fn verify_floor_factorial(p: u64, i: &BigRational) -> Result<FloorFactorialCert, QcalcError> {
    assert!(!i.is_negative(), "i must be a nonnegative element of N[1/p]");
    let mut denom = i.denom().clone();
    let p_big = BigInt::from(p);
    while denom > BigInt::one() {
        assert!(
            (&denom % &p_big).is_zero(),
            "denominator of i must be a power of p = {p}"
        );
        denom /= &p_big;
    }
    let small = rational_floor_u64(i) * p;
    let large = rational_floor_u64(&(i * BigRational::from(p_big.clone())));
    let (hi, lo) = if large >= small { (large, small) } else { (small, large) };
    let cofactor = q_factorial(hi)
        .exact_div(&q_factorial(lo))
        .map_err(|rem| QcalcError::NotDivisible {
            context: "verify_floor_factorial",
            remainder: rem.to_string(),
        })?;
    let cofactor_at_one = unit_certificate(&cofactor, p)?;
    Ok(FloorFactorialCert {
        p,
        floor_i_times_p: small,
        floor_ip: large,
        cofactor,
        cofactor_at_one,
    })
}

/// One nonzerodivisor check: phi([m]_q!) is coprime to [p]_q over Q, with
/// Bezout data s * phi([m]_q!) + t * [p]_q = 1 carried as the certificate.
/// `bezout_p_integral` records whether the coefficients of s and t have
/// denominators coprime to p (equivalently, phi([m]_q!) is invertible and not
/// merely a nonzerodivisor modulo [p]_q after localizing at p).
#[derive(Debug, Clone, PartialEq)]
pub struct NonzerodivisorCheck {
    pub m: u64,
    pub phi_factorial: IntPoly,
    pub bezout_s: RatPoly,
    pub bezout_t: RatPoly,
    pub bezout_p_integral: bool,
}

/// Certificate that Y^n = [n]_q! e_n in the one-variable divided-power model,
/// together with the nonzerodivisor facts driving the induction on n.
///
/// `via_binomials` is the coefficient accumulated by multiplying out
/// e_1^n one factor at a time using the basis structure constants
/// e_a * e_1 = [a+1 choose 1]_q e_(a+1); it must equal `factorial`.
#[derive(Debug, Clone, PartialEq)]
pub struct QPowerCertificate {
    pub p: u64,
    pub n: u64,
    pub factorial: IntPoly,
    pub via_binomials: IntPoly,
    pub nzd_checks: Vec<NonzerodivisorCheck>,
}

impl QPowerCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p,
            "n": self.n,
            "factorial": self.factorial.to_json(),
            "nzd_ms": self.nzd_checks.iter().map(|c| c.m).collect::<Vec<_>>(),
            "nzd_p_integral": self.nzd_checks.iter().map(|c| c.bezout_p_integral).collect::<Vec<_>>(),
        })
    }
}

pub fn q_power_divisibility(p: u64, n: u64) -> Result<QPowerCertificate, QcalcError> {
    assert!(n <= 64, "degree bound exceeded");
    let factorial = q_factorial(n);
    let mut via_binomials = IntPoly::one(factorial.vars().clone());
    for a in 1..n {
        via_binomials = via_binomials.mul(&q_binomial(a + 1, 1)?);
    }
    assert!(
        via_binomials == factorial,
        "structure constants of e_1^n disagree with [n]_q!"
    );
    let cyclotomic = RatPoly::from_int_poly(&q_int(p));
    let mut nzd_checks = Vec::new();
    for m in 1..=(n / p) {
        let phi_factorial = frobenius_q(&q_factorial(m), p);
        let (g, s, t) = rat_extended_gcd(&RatPoly::from_int_poly(&phi_factorial), &cyclotomic);
        assert!(
            g.is_one(),
            "phi([{m}]_q!) shares a factor with [p]_q: not a nonzerodivisor"
        );
        let bezout_p_integral = s.is_p_integral(p) && t.is_p_integral(p);
        nzd_checks.push(NonzerodivisorCheck {
            m,
            phi_factorial,
            bezout_s: s,
            bezout_t: t,
            bezout_p_integral,
        });
    }
    Ok(QPowerCertificate { p, n, factorial, via_binomials, nzd_checks })
}
