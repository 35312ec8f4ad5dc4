//! Univariate division and extended gcd over Q[x], used as the certificate
//! backend for nonzerodivisor checks modulo cyclotomic polynomials.

use base_arith::RatPoly;
use num_rational::BigRational;
use num_traits::One;

fn degree(f: &RatPoly) -> Option<u32> {
    assert_eq!(f.vars().len(), 1, "rational gcd is univariate");
    f.degree_in(0)
}

fn leading_coeff(f: &RatPoly) -> BigRational {
    let d = degree(f).expect("nonzero polynomial");
    f.coeff_of(&[d])
}

/// Division with remainder: a = q*b + r with deg r < deg b.
pub fn rat_divmod(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    assert!(!b.is_zero(), "division by zero polynomial");
    let vars = a.vars().clone();
    let db = degree(b).expect("nonzero divisor");
    let lb = leading_coeff(b);
    let mut quot = RatPoly::zero(vars.clone());
    let mut rem = a.clone();
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = rem.coeff_of(&[dr]) / &lb;
        let t = RatPoly::monomial(vars.clone(), vec![dr - db], c);
        rem = rem.sub(&t.mul(b));
        quot = quot.add(&t);
    }
    (quot, rem)
}

/// Extended Euclid: returns (g, s, t) with s*a + t*b = g, and g monic unless
/// both inputs are zero.  The Bezout identity is re-verified before returning.
pub fn rat_extended_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
    let vars = a.vars().clone();
    let one = RatPoly::one(vars.clone());
    let zero = RatPoly::zero(vars.clone());
    let mut r0 = a.clone();
    let mut s0 = one.clone();
    let mut t0 = zero.clone();
    let mut r1 = b.clone();
    let mut s1 = zero;
    let mut t1 = one;
    while !r1.is_zero() {
        let (q, r2) = rat_divmod(&r0, &r1);
        let s2 = s0.sub(&q.mul(&s1));
        let t2 = t0.sub(&q.mul(&t1));
        r0 = r1;
        s0 = s1;
        t0 = t1;
        r1 = r2;
        s1 = s2;
        t1 = t2;
    }
    if !r0.is_zero() {
        let inv_lead = BigRational::one() / leading_coeff(&r0);
        r0 = r0.mul_coeff(&inv_lead);
        s0 = s0.mul_coeff(&inv_lead);
        t0 = t0.mul_coeff(&inv_lead);
    }
    let check = s0.mul(a).add(&t0.mul(b));
    assert!(check == r0, "Bezout identity failed to verify");
    (r0, s0, t0)
}

/// Whether f and g are coprime in Q[x].
pub fn rat_coprime(a: &RatPoly, b: &RatPoly) -> bool {
    let (g, _, _) = rat_extended_gcd(a, b);
    g.is_one()
}
