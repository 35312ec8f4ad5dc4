use base_arith::{varset, BaseRing, IntPoly, RatPoly};
use delta_core::{
    delta_base, delta_power_divisibility, distinguished_membership_check,
    divided_power_certificate, gamma_2p_unit, is_distinguished, p_elem, q_analog_of_p,
    q_minus_one_elem, w2_check, DeltaError, DeltaPoly, DeltaRing,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[test]
fn delta_of_prime_constant() {
    // δ(p) = 1 − p^(p−1) on integer constants.
    let r2 = DeltaRing::new(2, 1);
    assert_eq!(r2.from_int(2).delta().unwrap(), r2.from_int(-1));
    let r3 = DeltaRing::new(3, 1);
    assert_eq!(r3.from_int(3).delta().unwrap(), r3.from_int(-8));
    let r5 = DeltaRing::new(5, 1);
    assert_eq!(r5.from_int(5).delta().unwrap(), r5.from_int(1 - 625));
}

#[test]
fn delta_of_zero_and_one_vanish() {
    for p in [2u64, 3, 5] {
        let ring = DeltaRing::new(p, 1);
        assert!(ring.from_int(0).delta().unwrap().is_zero());
        assert!(ring.from_int(1).delta().unwrap().is_zero());
    }
}

#[test]
fn delta_product_rule_as_polynomial_identity() {
    for p in [2u64, 3] {
        let ring = DeltaRing::new(p, 2);
        let x = ring.gen(0);
        let y = ring.gen(1);
        let dx = x.delta().unwrap();
        let dy = y.delta().unwrap();
        let lhs = x.mul(&y).delta().unwrap();
        let rhs = x
            .pow(p as u32)
            .mul(&dy)
            .add(&y.pow(p as u32).mul(&dx))
            .add(&ring.from_int(p as i64).mul(&dx).mul(&dy));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn delta_sum_rule_as_polynomial_identity() {
    for p in [2u64, 3] {
        let ring = DeltaRing::new(p, 2);
        let x = ring.gen(0);
        let y = ring.gen(1);
        let correction_num = x
            .pow(p as u32)
            .add(&y.pow(p as u32))
            .sub(&x.add(&y).pow(p as u32));
        let correction = correction_num
            .poly()
            .div_int_exact(&BigInt::from(p))
            .expect("binomial correction divides by p");
        let lhs = x.add(&y).delta().unwrap();
        let rhs = x
            .delta()
            .unwrap()
            .add(&y.delta().unwrap())
            .add(&ring.from_poly(correction));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn phi_of_generator_and_constants() {
    for p in [2u64, 3, 5] {
        let ring = DeltaRing::new(p, 1);
        let x = ring.gen(0);
        let expected = x
            .pow(p as u32)
            .add(&ring.from_int(p as i64).mul(&ring.derivative_var(0, 1)));
        assert_eq!(x.phi().unwrap(), expected);
        // φ(x) = x^p + p·δ(x) with δ(x) the level-1 variable.
        assert_eq!(x.delta().unwrap(), ring.derivative_var(0, 1));
        assert_eq!(ring.from_int(7).phi().unwrap(), ring.from_int(7));
    }
}

#[test]
fn joyal_low_cases() {
    let ring = DeltaRing::new(3, 1);
    let x = ring.gen(0);
    let f = x.pow(2).add(&ring.from_int(5));
    assert_eq!(f.joyal_delta_n(0).unwrap(), f);
    assert_eq!(f.joyal_delta_n(1).unwrap(), f.delta().unwrap());
    for n in 1..=3 {
        assert!(ring.from_int(1).joyal_delta_n(n).unwrap().is_zero());
    }
}

#[test]
fn joyal_delta2_explicit_at_p2() {
    // Oracle: expand φ²(x) and perform the defining exact division directly.
    let ring = DeltaRing::new(2, 1);
    let x = ring.gen(0);
    let a = ring.derivative_var(0, 1);
    let b = ring.derivative_var(0, 2);
    let phi2 = x.phi().unwrap().phi().unwrap();
    let numerator = phi2
        .sub(&x.pow(4))
        .sub(&ring.from_int(2).mul(&a.pow(2)));
    let oracle = ring.from_poly(
        numerator
            .poly()
            .div_int_exact(&BigInt::from(4))
            .expect("division by p² must be exact"),
    );
    assert_eq!(x.joyal_delta_n(2).unwrap(), oracle);
    // Frozen expansion: δ₂(x) = δ²(x) + x²·δ(x) + δ(x)².
    let frozen = b.add(&x.pow(2).mul(&a)).add(&a.pow(2));
    assert_eq!(oracle, frozen);
}

#[test]
fn joyal_identity_reconstructs_phi_squared() {
    for p in [2u64, 3] {
        let ring = DeltaRing::new(p, 1);
        let x = ring.gen(0);
        let f = x.pow(2).add(&ring.from_int(3).mul(&x)).add(&ring.from_int(1));
        let lhs = f.phi_pow(2).unwrap();
        let d0 = f.joyal_delta_n(0).unwrap();
        let d1 = f.joyal_delta_n(1).unwrap();
        let d2 = f.joyal_delta_n(2).unwrap();
        let rhs = d0
            .pow((p * p) as u32)
            .add(&ring.from_int(p as i64).mul(&d1.pow(p as u32)))
            .add(&ring.from_int((p * p) as i64).mul(&d2));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn depth_bound_is_an_error_not_truncation() {
    let ring = DeltaRing::with_depth(2, 1, 2);
    let x = ring.gen(0);
    let dx = x.delta().expect("one derivative fits");
    assert_eq!(
        dx.delta(),
        Err(DeltaError::DepthExceeded { needed: 3, depth: 2 })
    );
}

#[test]
fn w2_check_specific_pairs() {
    for p in [2u64, 3] {
        let ring = DeltaRing::new(p, 2);
        let x = ring.gen(0);
        let y = ring.gen(1);
        assert!(w2_check(&x, &y).unwrap());
        let f = x.pow(2).sub(&y);
        let g = x.mul(&y).add(&ring.from_int(2));
        assert!(w2_check(&f, &g).unwrap());
        // w(1) = (1, 0): the delta component of 1 vanishes.
        assert!(ring.from_int(1).delta().unwrap().is_zero());
    }
}

#[test]
fn distinguished_p_in_truncated_base() {
    let b220 = BaseRing::create(2, 2, 2, 0).unwrap();
    assert_eq!(is_distinguished(&p_elem(&b220)), Ok(true));
    let b334 = BaseRing::create(3, 3, 4, 0).unwrap();
    assert_eq!(is_distinguished(&p_elem(&b334)), Ok(true));
    // δ(3) = 1 − 3² = −8 ≡ 1 mod 9.
    let d = delta_base(&p_elem(&b334)).unwrap();
    assert_eq!(d.coeffs()[0], BigInt::one());
    assert!(d.coeffs()[1..].iter().all(|c| c.is_zero()));
    // δ(2) = −1 ≡ 3 mod 4 at N = 3.
    let b233 = BaseRing::create(2, 3, 3, 1).unwrap();
    let d2 = delta_base(&p_elem(&b233)).unwrap();
    assert_eq!(d2.coeffs()[0], BigInt::from(3));
}

#[test]
fn distinguished_q_analog() {
    let b3 = BaseRing::create(3, 3, 4, 1).unwrap();
    assert_eq!(is_distinguished(&q_analog_of_p(&b3)), Ok(true));
    let b2 = BaseRing::create(2, 3, 3, 1).unwrap();
    assert_eq!(is_distinguished(&q_analog_of_p(&b2)), Ok(true));
}

#[test]
fn q_minus_one_is_not_distinguished() {
    // Oracle first, in plain integer polynomial arithmetic over t:
    // δ(q−1) = ((q^p − 1) − (q−1)^p)/p with q = t^(p^K); its value at t = 1
    // must be divisible by p, so δ(q−1) cannot be a unit.
    for (p, k) in [(2u64, 1u32), (3, 1)] {
        let vars = varset(vec!["t"]);
        let t = IntPoly::var(vars.clone(), 0);
        let q = t.pow(p.pow(k) as u32);
        let one = IntPoly::one(vars.clone());
        let mut q_analog = IntPoly::zero(vars.clone());
        let mut q_pow = one.clone();
        for _ in 0..p {
            q_analog = q_analog.add(&q_pow);
            q_pow = q_pow.mul(&q);
        }
        let q_minus_1 = q.sub(&one);
        let numerator = q_minus_1.mul(&q_analog).sub(&q_minus_1.pow(p as u32));
        let delta_poly = numerator
            .div_int_exact(&BigInt::from(p))
            .expect("numerator divisible by p");
        let at_one = delta_poly.eval_int(&[BigInt::one()]);
        assert!(
            (&at_one % BigInt::from(p)).is_zero(),
            "oracle: δ(q−1)(1) must be ≡ 0 mod p, got {at_one}"
        );
    }
    // Implementation agrees.
    let b3 = BaseRing::create(3, 3, 4, 1).unwrap();
    assert_eq!(is_distinguished(&q_minus_one_elem(&b3)), Ok(false));
    let b2 = BaseRing::create(2, 3, 3, 1).unwrap();
    assert_eq!(is_distinguished(&q_minus_one_elem(&b2)), Ok(false));
}

#[test]
fn precision_one_is_reported() {
    let b = BaseRing::create(3, 1, 2, 0).unwrap();
    assert_eq!(is_distinguished(&p_elem(&b)), Err(DeltaError::PrecisionLoss(1)));
}

#[test]
fn membership_for_p_with_witness() {
    for ring in [
        BaseRing::create(2, 2, 2, 0).unwrap(),
        BaseRing::create(3, 3, 4, 1).unwrap(),
    ] {
        let d = p_elem(&ring);
        let (ok, witness) = distinguished_membership_check(&d);
        assert!(ok);
        let w = witness.expect("witness accompanies a positive answer");
        let recombined = w.a.mul(&d).add(&w.b.mul(&d.frobenius()));
        assert_eq!(recombined, p_elem(&ring));
    }
}

#[test]
fn membership_for_q_analog_and_refusal_for_q_minus_one() {
    for ring in [
        BaseRing::create(3, 3, 4, 1).unwrap(),
        BaseRing::create(2, 3, 3, 1).unwrap(),
    ] {
        let qp = q_analog_of_p(&ring);
        let (ok, witness) = distinguished_membership_check(&qp);
        assert!(ok, "p should lie in ([p]_q, φ([p]_q))");
        let w = witness.unwrap();
        let recombined = w.a.mul(&qp).add(&w.b.mul(&qp.frobenius()));
        assert_eq!(recombined, p_elem(&ring));

        let (bad, none) = distinguished_membership_check(&q_minus_one_elem(&ring));
        assert!(!bad);
        assert!(none.is_none());
    }
}

#[test]
fn membership_agrees_with_delta_unit_test() {
    let rings = [
        BaseRing::create(2, 2, 2, 0).unwrap(),
        BaseRing::create(2, 3, 3, 1).unwrap(),
        BaseRing::create(3, 2, 3, 1).unwrap(),
        BaseRing::create(3, 3, 4, 1).unwrap(),
    ];
    for ring in &rings {
        let p = p_elem(ring);
        let qp = q_analog_of_p(ring);
        let u = q_minus_one_elem(ring);
        let candidates = vec![
            p.clone(),
            qp.clone(),
            u.clone(),
            u.mul(&u),
            p.mul(&u),
            p.add(&u),
            p.add(&p),
            p.mul(&p),
            qp.mul(&u),
            qp.sub(&p),
            qp.add(&u.mul(&u).mul(&u)),
        ];
        for d in candidates {
            assert!(!d.is_unit(), "agreement is only claimed on non-units");
            let via_delta = is_distinguished(&d).expect("N ≥ 2 in all tested rings");
            let (via_membership, _) = distinguished_membership_check(&d);
            assert_eq!(
                via_delta,
                via_membership,
                "disagreement at d = {d} in B({}, {}, {}, {})",
                ring.p(),
                ring.prec_p(),
                ring.prec_t(),
                ring.root_depth()
            );
        }
    }
}

#[test]
fn membership_agreement_exhaustive_small_ring() {
    // All 16 elements of B(2,2,2,0); the equivalence is claimed for
    // non-units (elements of the maximal ideal).
    let ring = BaseRing::create(2, 2, 2, 0).unwrap();
    for c0 in 0..4i64 {
        for c1 in 0..4i64 {
            let d = ring.elem(vec![BigInt::from(c0), BigInt::from(c1)]);
            if d.is_unit() {
                continue;
            }
            let via_delta = is_distinguished(&d).unwrap();
            let (via_membership, _) = distinguished_membership_check(&d);
            assert_eq!(via_delta, via_membership, "disagreement at ({c0}, {c1})");
        }
    }
}

#[test]
fn unit_multiples_of_distinguished_stay_distinguished() {
    let ring = BaseRing::create(2, 2, 2, 0).unwrap();
    let mut seen_distinguished = 0usize;
    for c0 in 0..4i64 {
        for c1 in 0..4i64 {
            let d = ring.elem(vec![BigInt::from(c0), BigInt::from(c1)]);
            if d.is_unit() || is_distinguished(&d) != Ok(true) {
                continue;
            }
            seen_distinguished += 1;
            for u0 in 0..4i64 {
                for u1 in 0..4i64 {
                    let u = ring.elem(vec![BigInt::from(u0), BigInt::from(u1)]);
                    if !u.is_unit() {
                        continue;
                    }
                    assert_eq!(is_distinguished(&u.mul(&d)), Ok(true));
                }
            }
        }
    }
    assert!(seen_distinguished > 0, "the sweep must hit distinguished elements");
}

/// Oracle for δ(x^(p^n)): apply only the product rule, never δ on a power
/// directly.  Maintains the pair (y, δ(y)) and raises to the p-th power by
/// folding `δ(f·g) = f^p δ(g) + g^p δ(f) + p δ(f) δ(g)`.
fn power_delta_by_product_rule(ring: &DeltaRing, n: u32) -> DeltaPoly {
    let p = ring.p();
    let x = ring.gen(0);
    let dx = x.delta().expect("depth allows one derivative");
    let p_const = ring.from_int(p as i64);
    let mut y = x.clone();
    let mut dy = dx.clone();
    for _ in 0..n {
        let mut f = y.clone();
        let mut df = dy.clone();
        for _ in 1..p {
            let next = f.mul(&y);
            let dnext = f
                .pow(p as u32)
                .mul(&dy)
                .add(&y.pow(p as u32).mul(&df))
                .add(&p_const.mul(&df).mul(&dy));
            f = next;
            df = dnext;
        }
        y = f;
        dy = df;
    }
    dy
}

#[test]
fn power_divisibility_certificates_match_product_rule_oracle() {
    for (p, n_max) in [(2u64, 2u32), (3, 2)] {
        let ring = DeltaRing::with_depth(p, 1, 2);
        for n in 0..=n_max {
            let oracle_delta = power_delta_by_product_rule(&ring, n);
            let oracle_quotient = oracle_delta
                .poly()
                .div_int_exact(&BigInt::from(p).pow(n))
                .expect("oracle value must be divisible by p^n");
            let cert = delta_power_divisibility(p, n).unwrap();
            assert_eq!(cert.quotient.poly(), &oracle_quotient);
        }
    }
}

#[test]
fn power_divisibility_base_case_is_delta_itself() {
    let cert = delta_power_divisibility(2, 0).unwrap();
    let ring = cert.quotient.ring().clone();
    assert_eq!(cert.quotient, ring.derivative_var(0, 1));
}

#[test]
fn gamma_p_certificate_and_rearrangement() {
    // φ(x) − x^p = p·δ(x) exactly, so x^p/p = φ(x)/p − δ(x).
    for p in [2u64, 3] {
        let ring = DeltaRing::new(p, 1);
        let x = ring.gen(0);
        let lhs = x.phi().unwrap().sub(&x.pow(p as u32));
        let rhs = ring.from_int(p as i64).mul(&x.delta().unwrap());
        assert_eq!(lhs, rhs);

        let cert = divided_power_certificate(p, p as u32).unwrap();
        // u_p = p / p! = 1/(p−1)!.
        let mut fact = BigInt::one();
        for k in 2..p {
            fact *= BigInt::from(k);
        }
        assert_eq!(cert.unit, BigRational::new(BigInt::one(), fact));
        assert!(cert.poly.is_p_integral(p));
    }
}

#[test]
fn gamma_p_squared_certificate_exists() {
    for p in [2u64, 3] {
        let cert = divided_power_certificate(p, (p * p) as u32).unwrap();
        assert!(cert.poly.is_p_integral(p));
        assert_eq!(cert.digits, vec![0, 0, 1]);
    }
}

#[test]
fn gamma_2p_unit_comparison() {
    // Oracle: coefficients of x^(2p) on both sides in ℚ[x] are 1/(2p)! and
    // (1/p!)²/2, so u = 2·(p!)²/(2p)!.
    for (p, frozen_num, frozen_den) in [(2u64, 1i64, 3i64), (3, 1, 10)] {
        let mut p_fact = BigInt::one();
        for k in 2..=p {
            p_fact *= BigInt::from(k);
        }
        let mut two_p_fact = BigInt::one();
        for k in 2..=(2 * p) {
            two_p_fact *= BigInt::from(k);
        }
        let oracle = BigRational::new(BigInt::from(2) * &p_fact * &p_fact, two_p_fact);
        let frozen = BigRational::new(BigInt::from(frozen_num), BigInt::from(frozen_den));
        assert_eq!(oracle, frozen, "oracle disagrees with the frozen literal");
        assert_eq!(gamma_2p_unit(p), frozen);
    }
}

#[test]
fn divided_power_certificates_exist_up_to_p_cubed() {
    for p in [2u64, 3] {
        for n in 0..=(p * p * p) as u32 {
            let cert = divided_power_certificate(p, n)
                .unwrap_or_else(|e| panic!("certificate failed at p={p}, n={n}: {e}"));
            assert!(cert.poly.is_p_integral(p), "non-integral output at p={p}, n={n}");
            let rebuilt: u64 = cert
                .digits
                .iter()
                .enumerate()
                .map(|(k, d)| *d as u64 * p.pow(k as u32))
                .sum();
            assert_eq!(rebuilt, n as u64);
        }
    }
}

#[test]
fn certificate_serialization_shape() {
    let cert = divided_power_certificate(2, 4).unwrap();
    let v = cert.to_json();
    assert_eq!(v["p"], 2);
    assert_eq!(v["n"], 4);
    assert!(v["terms"].is_array());
    assert!(v["unit"]["numer"].is_string());

    let ring = DeltaRing::new(2, 1);
    let poly_json = ring.gen(0).delta().unwrap().to_json();
    assert!(poly_json["vars"].is_array());
    assert!(poly_json["terms"]["terms"].is_array());
}

#[test]
fn rational_model_poly_roundtrip() {
    // RatPoly exactness spot check used by the certificate machinery:
    // is_p_integral rejects 1/p but accepts 1/(p+1)-style denominators.
    let vars = varset(vec!["x"]);
    let half = RatPoly::constant(vars.clone(), BigRational::new(BigInt::one(), BigInt::from(2)));
    assert!(!half.is_p_integral(2));
    assert!(half.is_p_integral(3));
}
