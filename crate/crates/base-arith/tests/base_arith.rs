use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use base_arith::chain::ChainKind;
use base_arith::linalg::{integer_invariant_factors, solve_local, solve_zmod};
use base_arith::ring::eval_poly;
use base_arith::{ArithError, BaseRing, ChainRing, GfRing, IntPoly, RingOps, varset};

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(int(n), int(d))
}

#[test]
fn exact_div_roundtrip_and_witness() {
    let vars = varset(vec!["x", "y"]);
    let x = IntPoly::var(vars.clone(), 0);
    let y = IntPoly::var(vars.clone(), 1);
    let a = x.pow(3).add(&y.mul_coeff(&int(7))).sub(&IntPoly::one(vars.clone()));
    let b = x.mul(&y).add(&IntPoly::from_int(vars.clone(), 2));
    let prod = a.mul(&b);
    assert_eq!(prod.exact_div(&b).unwrap(), a);
    assert_eq!(prod.exact_div(&a).unwrap(), b);

    // x² + 1 = (x + 1)(x − 1) + 2: division must refuse with remainder 2.
    let xa = varset(vec!["x"]);
    let xv = IntPoly::var(xa.clone(), 0);
    let f = xv.pow(2).add(&IntPoly::one(xa.clone()));
    let g = xv.add(&IntPoly::one(xa.clone()));
    match f.exact_div(&g) {
        Ok(_) => panic!("x^2+1 is not divisible by x+1"),
        Err(rem) => assert_eq!(rem, IntPoly::from_int(xa.clone(), 2)),
    }
}

#[test]
fn rem_monic_reduces_cyclotomic() {
    let xa = varset(vec!["x"]);
    let xv = IntPoly::var(xa.clone(), 0);
    // x^3 mod (x² + x + 1) = 1 since x³ − 1 = (x − 1)(x² + x + 1).
    let phi = xv.pow(2).add(&xv).add(&IntPoly::one(xa.clone()));
    assert_eq!(xv.pow(3).rem_monic(&phi), IntPoly::one(xa.clone()));
}

#[test]
fn base_ring_validation() {
    assert_eq!(BaseRing::create(4, 2, 2, 0).unwrap_err(), ArithError::NonPrime(4));
    assert_eq!(BaseRing::create(1, 2, 2, 0).unwrap_err(), ArithError::NonPrime(1));
    assert_eq!(
        BaseRing::create(3, 0, 2, 0).unwrap_err(),
        ArithError::ZeroPrecision("prec_p".into())
    );
    assert_eq!(
        BaseRing::create(3, 2, 0, 0).unwrap_err(),
        ArithError::ZeroPrecision("prec_t".into())
    );
}

#[test]
fn q_expansion_at_depth_one() {
    // p = 3, N = 2, M = 3, K = 1: q − 1 = (1 + (t−1))³ − 1 truncates to
    // 3(t−1) + 3(t−1)² once (t−1)³ is gone; 3 and 3 survive mod 9.
    let ring = BaseRing::create(3, 2, 3, 1).unwrap();
    let qm1 = ring.q_minus_one();
    assert_eq!(qm1.coeffs(), &[int(0), int(3), int(3)]);
    // Depth 0 degenerates to q = t.
    let ring0 = BaseRing::create(3, 2, 3, 0).unwrap();
    assert_eq!(ring0.q(), ring0.t());
}

#[test]
fn base_units_and_inverses() {
    let ring = BaseRing::create(3, 3, 4, 1).unwrap();
    assert!(ring.t().is_unit());
    assert!(ring.q().is_unit());
    assert!(!ring.q_minus_one().is_unit());
    assert!(!ring.from_i64(3).is_unit());
    assert!(ring.from_i64(5).is_unit());

    let u = ring.t().add(&ring.from_i64(3)); // unit: constant term 4
    let inv = u.inv().unwrap();
    assert_eq!(u.mul(&inv), ring.one());
    assert!(matches!(ring.from_i64(6).inv(), Err(ArithError::NotAUnit(_))));
}

#[test]
fn base_frobenius_on_t_and_q() {
    let ring = BaseRing::create(3, 2, 4, 1).unwrap();
    // φ(t) = t³ and φ(q) = q³ with q = t³.
    assert_eq!(ring.t().frobenius(), ring.t().pow(3));
    assert_eq!(ring.q().frobenius(), ring.q().pow(3));
    assert_eq!(ring.t().frobenius_pow(2), ring.t().pow(9));
}

#[test]
fn lift_roundtrip_and_q_to_1() {
    let ring = BaseRing::create(3, 2, 4, 1).unwrap();
    let x = ring.elem(vec![int(5), int(2), int(0), int(8)]);
    assert_eq!(ring.from_t_poly(&x.lift_t()), x);
    assert_eq!(ring.q().eval_t_1(), int(1));
    assert_eq!(ring.q_minus_one().eval_t_1(), int(0));
    assert_eq!(x.eval_t_1(), int(5));
    assert_eq!(x.t_order(), Some(0));
    assert_eq!(ring.q_minus_one().t_order(), Some(1));
    assert_eq!(ring.zero().t_order(), None);
}

#[test]
fn cyclotomic_relation_and_valuations() {
    let ring = ChainRing::cyclotomic(3, 1).unwrap();
    assert_eq!(ring.nilpotency(), 2);
    // 1 + u + u² = 0.
    let u = ring.from_u_poly(vec![int(0), int(1)]);
    let phi = ring.one().add(&u).add(&u.mul(&u));
    assert!(phi.is_zero());
    // p lands at the valuation cap: 3 ≡ 0 mod 3^1.
    assert_eq!(ring.from_bigint(&int(3)).valuation(), 2);
    assert_eq!(ring.uniformizer().valuation(), 1);
    assert_eq!(ring.one().valuation(), 0);
    assert_eq!(ring.zero().valuation(), 2);

    // At N = 2 the element p is a unit multiple of π², strictly below the
    // cap of 4.
    let ring2 = ChainRing::cyclotomic(3, 2).unwrap();
    assert_eq!(ring2.from_bigint(&int(3)).valuation(), 2);
    assert_eq!(ring2.pi_pow(3).valuation(), 3);
    assert_eq!(ring2.nilpotency(), 4);
    assert!(ring2.pi_pow(4).is_zero());
    assert!(!ring2.pi_pow(3).is_zero());
}

#[test]
fn chain_elements_factor_as_unit_times_pi_power() {
    for (p, n) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
        for kind in [ChainKind::Zmod, ChainKind::Cyclotomic] {
            let ring = ChainRing::create(kind, p, n).unwrap();
            let e = ring.nilpotency();
            for x in ring.enumerate() {
                let v = x.valuation();
                if x.is_zero() {
                    assert_eq!(v, e);
                    continue;
                }
                assert!(v < e, "nonzero element at the cap: {x}");
                // x is divisible by π^v …
                let w = ring.pi_pow(v).solve_mul(&x).expect("π^v divides x");
                // … with unit cofactor, so not divisible by π^{v+1}.
                assert!(w.is_unit(), "cofactor of {x} not a unit");
                assert_eq!(w.mul(&ring.pi_pow(v)), x);
                if v + 1 < e {
                    assert!(ring.pi_pow(v + 1).solve_mul(&x).is_none());
                }
            }
        }
    }
}

#[test]
fn chain_valuation_is_multiplicative() {
    let ring = ChainRing::cyclotomic(3, 2).unwrap();
    let e = ring.nilpotency();
    let all = ring.enumerate();
    for x in &all {
        for y in &all {
            let vxy = x.mul(y).valuation();
            assert_eq!(vxy, (x.valuation() + y.valuation()).min(e));
            assert!(x.add(y).valuation() >= x.valuation().min(y.valuation()));
        }
    }
}

#[test]
fn chain_inverse_and_specialization() {
    let ring = ChainRing::cyclotomic(5, 2).unwrap();
    let u = ring.from_u_poly(vec![int(2), int(1), int(0), int(3)]);
    assert!(u.is_unit());
    assert_eq!(u.inv().unwrap().mul(&u), ring.one());

    // t ↦ u sends 1 + t + t² + t³ + t⁴ to Φ_5(u) = 0.
    let xa = varset(vec!["t"]);
    let tv = IntPoly::var(xa.clone(), 0);
    let mut f = IntPoly::one(xa.clone());
    for k in 1..5 {
        f = f.add(&tv.pow(k));
    }
    assert!(ring.from_t_poly(&f).is_zero());
}

#[test]
fn solve_zmod_finds_and_refuses() {
    let p = int(3);
    let a = vec![
        vec![int(2), int(3), int(1)],
        vec![int(6), int(4), int(5)],
    ];
    let x_true = [int(7), int(2), int(10)];
    let b: Vec<BigInt> = a
        .iter()
        .map(|row| row.iter().zip(&x_true).map(|(c, x)| c * x).sum())
        .collect();
    let sol = solve_zmod(&p, 3, &a, &b).expect("consistent system");
    let pn = p.pow(3);
    for (row, rhs) in a.iter().zip(&b) {
        let acc: BigInt = row.iter().zip(&sol).map(|(c, x)| c * x).sum();
        assert_eq!(
            num_integer::Integer::mod_floor(&acc, &pn),
            num_integer::Integer::mod_floor(rhs, &pn)
        );
    }
    // 3x ≡ 1 (mod 9) has no solution.
    assert!(solve_zmod(&p, 2, &[vec![int(3)]], &[int(1)]).is_none());
    // 3x ≡ 6 (mod 9) does.
    let s = solve_zmod(&p, 2, &[vec![int(3)]], &[int(6)]).unwrap();
    assert_eq!(num_integer::Integer::mod_floor(&(int(3) * &s[0]), &int(9)), int(6));
}

#[test]
fn solve_local_respects_p_integrality() {
    let p = int(3);
    // x = 1/3 solves 3x = 1 over ℚ but not over ℤ_(3).
    assert!(solve_local(&p, &[vec![rat(3, 1)]], &[rat(1, 1)]).is_none());
    // Denominators prime to p are fine: (1/2)x = 5 ⇒ x = 10.
    let sol = solve_local(&p, &[vec![rat(1, 2)]], &[rat(5, 1)]).unwrap();
    assert_eq!(sol[0], rat(10, 1));
    // A consistent 2×3 system keeps integrality through elimination.
    let a = vec![
        vec![rat(1, 2), rat(3, 1), rat(1, 1)],
        vec![rat(1, 1), rat(6, 1), rat(5, 4)],
    ];
    let x_true = [rat(2, 1), rat(1, 5), rat(3, 1)];
    let b: Vec<BigRational> = a
        .iter()
        .map(|row| row.iter().zip(&x_true).map(|(c, x)| c * x).sum())
        .collect();
    let sol = solve_local(&p, &a, &b).expect("consistent system");
    for (row, rhs) in a.iter().zip(&b) {
        let acc: BigRational = row.iter().zip(&sol).map(|(c, x)| c * x).sum();
        assert_eq!(&acc, rhs);
    }
    for s in &sol {
        if !s.is_zero() {
            assert!(base_arith::linalg::vp_rat(s, &p) >= 0);
        }
    }
}

#[test]
fn integer_smith_examples() {
    let m = vec![vec![int(2), int(2)], vec![int(2), int(4)]];
    assert_eq!(integer_invariant_factors(&m), vec![int(2), int(2)]);

    let m = vec![vec![int(2), int(4), int(4)], vec![int(-6), int(6), int(12)], vec![int(10), int(4), int(16)]];
    // Known invariant factors 2, 2, 156 (determinant −624 = −2·2·156).
    assert_eq!(integer_invariant_factors(&m), vec![int(2), int(2), int(156)]);

    let m = vec![vec![int(1), int(0)], vec![int(0), int(0)]];
    assert_eq!(integer_invariant_factors(&m), vec![int(1), int(0)]);
}

#[test]
fn gcd_of_entries_is_first_invariant_factor() {
    use num_integer::Integer;
    let m = vec![
        vec![int(6), int(10), int(15)],
        vec![int(35), int(21), int(14)],
    ];
    let d = integer_invariant_factors(&m);
    let mut g = BigInt::zero();
    for row in &m {
        for e in row {
            g = g.gcd(e);
        }
    }
    assert_eq!(d[0], g);
}

#[test]
fn finite_field_tables() {
    let f4 = GfRing::new(4);
    let g = f4.gen();
    // g² = g + 1 and g³ = 1.
    assert_eq!(f4.mul(&g, &g), f4.add(&g, &f4.one()));
    assert_eq!(f4.pow(&g, 3), f4.one());

    let f9 = GfRing::new(9);
    for x in f9.enumerate().unwrap() {
        // x^9 = x, and the Frobenius root inverts x ↦ x³.
        assert_eq!(f9.pow(&x, 9), x);
        let r = f9.frobenius_root(&x).unwrap();
        assert_eq!(f9.pow(&r, 3), x);
    }

    let f8 = GfRing::new(8);
    let count = f8.enumerate().unwrap().len();
    assert_eq!(count, 8);
    for x in f8.enumerate().unwrap() {
        if !f8.is_zero(&x) {
            assert_eq!(f8.pow(&x, 7), f8.one());
        }
    }
}

#[test]
fn eval_poly_bridges_polynomials_into_rings() {
    let vars = varset(vec!["a", "b"]);
    let a = IntPoly::var(vars.clone(), 0);
    let b = IntPoly::var(vars.clone(), 1);
    // a² − b over F_9 at (g, g²) is g² − g² · … : just compare two routes.
    let f = a.pow(2).sub(&b);
    let f9 = GfRing::new(9);
    let g = f9.gen();
    let g2 = f9.mul(&g, &g);
    let lhs = eval_poly(&f9, &f, &[g.clone(), g2.clone()]);
    let rhs = f9.sub(&f9.mul(&g, &g), &g2);
    assert_eq!(lhs, rhs);
    assert!(f9.is_zero(&lhs));
}
