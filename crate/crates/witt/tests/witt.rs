use base_arith::{BigIntRing, DualRing, GfRing, IntPoly, RingOps, ZmodRing};
use num_bigint::BigInt;
use num_traits::Zero;
use witt::{
    from_teichmuller_coordinates, no_nonzerodivisor_witness, structure_polys,
    tate_twist_invariants, teichmuller_coordinates, WittError, WittRing,
};

#[test]
fn length_two_closed_formulas() {
    for p in [2u64, 3, 5] {
        let sp = structure_polys(p, 2);
        let v = sp.vars_xy.clone();
        let x0 = IntPoly::var(v.clone(), 0);
        let x1 = IntPoly::var(v.clone(), 1);
        let y0 = IntPoly::var(v.clone(), 2);
        let y1 = IntPoly::var(v.clone(), 3);
        let p_int = BigInt::from(p);

        let s0 = x0.add(&y0);
        let s1_correction = x0
            .pow(p as u32)
            .add(&y0.pow(p as u32))
            .sub(&x0.add(&y0).pow(p as u32))
            .div_int_exact(&p_int)
            .expect("binomial correction divides by p");
        let s1 = x1.add(&y1).add(&s1_correction);
        assert_eq!(sp.sum[0], s0);
        assert_eq!(sp.sum[1], s1);

        let p0 = x0.mul(&y0);
        let p1 = x0
            .pow(p as u32)
            .mul(&y1)
            .add(&y0.pow(p as u32).mul(&x1))
            .add(&x1.mul(&y1).mul_coeff(&p_int));
        assert_eq!(sp.prod[0], p0);
        assert_eq!(sp.prod[1], p1);
    }
}

#[test]
fn square_of_zero_one_over_integers() {
    // Oracle by hand through the ghost map: gh(0,1) = (0, 2), so the square
    // has ghost (0, 4); solving x0 = 0, x0² + 2·x1 = 4 gives (0, 2).
    let ring = WittRing::new(BigIntRing, 2, 2);
    let a = ring.from_comps(vec![BigInt::zero(), BigInt::from(1)]);
    let gh = ring.ghost(&a);
    assert_eq!(gh, vec![BigInt::zero(), BigInt::from(2)]);
    let ghost_of_square: Vec<BigInt> = gh.iter().map(|g| g * g).collect();
    assert_eq!(ghost_of_square, vec![BigInt::zero(), BigInt::from(4)]);
    let x0 = ghost_of_square[0].clone();
    let x1 = (&ghost_of_square[1] - &x0 * &x0) / BigInt::from(2);
    assert_eq!((x0.clone(), x1.clone()), (BigInt::zero(), BigInt::from(2)));

    let square = ring.mul(&a, &a).unwrap();
    assert_eq!(square, ring.from_comps(vec![x0, x1]));
}

#[test]
fn additive_and_multiplicative_identity() {
    let ring = WittRing::new(ZmodRing::from_u64(9), 3, 3);
    for c in [[0i64, 5, 7], [3, 1, 4], [8, 8, 8]] {
        let a = ring.from_comps(c.iter().map(|&x| BigInt::from(x)).collect());
        assert_eq!(ring.add(&a, &ring.zero()).unwrap(), a);
        assert_eq!(ring.mul(&a, &ring.one()).unwrap(), a);
    }
}

#[test]
fn mixed_lengths_are_rejected() {
    let r2 = WittRing::new(BigIntRing, 2, 2);
    let r3 = WittRing::new(BigIntRing, 2, 3);
    let a = r2.from_comps(vec![BigInt::from(1), BigInt::from(2)]);
    let b = r3.from_comps(vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]);
    assert_eq!(r3.add(&a, &b), Err(WittError::MixedRings(2, 3)));
}

#[test]
fn teichmuller_is_multiplicative_over_f9() {
    let field = GfRing::new(9);
    let ring = WittRing::new(field.clone(), 3, 3);
    let elements = field.enumerate().expect("finite field");
    for a in &elements {
        for b in &elements {
            let lhs = ring
                .mul(&ring.teichmuller(a.clone()), &ring.teichmuller(b.clone()))
                .unwrap();
            let rhs = ring.teichmuller(field.mul(a, b));
            assert_eq!(lhs, rhs);
        }
    }
    assert_eq!(ring.one(), ring.teichmuller(field.one()));
}

#[test]
fn teichmuller_of_square_zero_element() {
    // In R = F_p[x]/(x²) the class of x has [x]·[x] = [x²] = 0.
    for p in [2u64, 3] {
        let dual = DualRing::new(GfRing::new(p));
        let ring = WittRing::new(dual.clone(), p, 3);
        let eps = dual.eps();
        let t = ring.teichmuller(eps);
        let square = ring.mul(&t, &t).unwrap();
        assert!(ring.is_zero(&square));
    }
}

#[test]
fn frobenius_of_teichmuller_is_teichmuller_of_power() {
    for q in [4u64, 9] {
        let field = GfRing::new(q);
        let p = field.p();
        let big = WittRing::new(field.clone(), p, 3);
        let small = WittRing::new(field.clone(), p, 2);
        for a in field.enumerate().expect("finite field") {
            let lhs = big.frobenius(&big.teichmuller(a.clone()));
            let rhs = small.teichmuller(field.pow(&a, p as u32));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn fv_is_multiplication_by_p() {
    // F(V(a)) = p·a after truncating a to length m−1.
    let cases: Vec<(u64, usize)> = vec![(2, 2), (2, 3), (3, 2), (3, 3)];
    for (p, m) in cases {
        let ring = WittRing::new(ZmodRing::from_u64(p.pow(m as u32 + 1)), p, m);
        let small = WittRing::new(ring.coeffs.clone(), p, m - 1);
        for seed in 0..5i64 {
            let a = ring.from_comps(
                (0..m).map(|i| BigInt::from(7 * seed + 3 * i as i64 + 1)).collect(),
            );
            let lhs = ring.frobenius(&ring.v_shift(&a));
            let truncated = small.from_comps(a.comps[..m - 1].to_vec());
            let rhs = small.scalar_int(&BigInt::from(p), &truncated);
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn teichmuller_times_v_vanishes_on_square_zero() {
    // [x]·V(w) = V(F([x])·w) = V([x^p]·w) = 0 when x² = 0; exhaustive at
    // p = 2, m = 2 over F_2[x]/(x²).
    let dual = DualRing::new(GfRing::new(2));
    let ring = WittRing::new(dual.clone(), 2, 2);
    let eps = dual.eps();
    let t = ring.teichmuller(eps);
    for w in ring.enumerate().expect("finite") {
        let prod = ring.mul(&t, &ring.v_shift(&w)).unwrap();
        assert!(ring.is_zero(&prod), "nonzero at w = {}", ring.render(&w));
    }
}

#[test]
fn zero_divisor_sweep_matches_local_structure() {
    for m in 1..=3usize {
        let report = no_nonzerodivisor_witness(m);
        let total = 4usize.pow(m as u32);
        assert_eq!(report.total, total);
        // Units have unit first component: 2 of the 4 dual numbers.
        assert_eq!(report.units, total / 2);
        // Everything else except zero received an annihilator.
        assert_eq!(report.witnesses.len(), total - report.units - 1);
    }
}

#[test]
fn zero_divisor_sweep_independent_oracle_m2() {
    // Independent exhaustive recount at m = 2, including the [x]·[x] = 0
    // witness for the Teichmüller lift of x.
    let dual = DualRing::new(GfRing::new(2));
    let ring = WittRing::new(dual.clone(), 2, 2);
    let all = ring.enumerate().expect("finite");
    let mut nonunit_nonzero = 0usize;
    for w in &all {
        if ring.is_unit(w) || ring.is_zero(w) {
            continue;
        }
        nonunit_nonzero += 1;
        let has_annihilator = all
            .iter()
            .any(|a| !ring.is_zero(a) && ring.is_zero(&ring.mul(w, a).unwrap()));
        assert!(has_annihilator, "non-unit {} is a nonzerodivisor", ring.render(w));
    }
    let report = no_nonzerodivisor_witness(2);
    assert_eq!(report.witnesses.len(), nonunit_nonzero);

    let eps = dual.eps();
    let t = ring.teichmuller(eps);
    assert!(ring.is_zero(&ring.mul(&t, &t).unwrap()));
}

#[test]
fn teichmuller_coordinates_roundtrip() {
    let cases: Vec<(u64, usize)> = vec![(4, 2), (4, 3), (9, 2), (3, 3), (2, 3)];
    for (q, m) in cases {
        let field = GfRing::new(q);
        let p = field.p();
        let ring = WittRing::new(field.clone(), p, m);
        for w in ring.enumerate().expect("finite").into_iter().take(200) {
            let coords = teichmuller_coordinates(&field, m, &w);
            assert_eq!(coords.len(), field.degree());
            let pm = BigInt::from(p).pow(m as u32);
            for c in &coords {
                assert!(c >= &BigInt::zero() && c < &pm, "coordinate not canonical");
            }
            let back = from_teichmuller_coordinates(&field, m, &coords);
            assert_eq!(back, w, "roundtrip failed for {}", ring.render(&w));
        }
        // The identity has coordinates (1, 0, …, 0).
        let one_coords = teichmuller_coordinates(&field, m, &ring.one());
        assert_eq!(one_coords[0], BigInt::from(1));
        assert!(one_coords[1..].iter().all(|c| c.is_zero()));
    }
}

#[test]
fn delta_two_routes_agree_on_perfect_coefficients() {
    let cases: Vec<(u64, usize)> = vec![(4, 2), (2, 3), (9, 2), (3, 3)];
    for (q, m) in cases {
        let field = GfRing::new(q);
        let p = field.p();
        let ring = WittRing::new(field.clone(), p, m);
        for w in ring.enumerate().expect("finite") {
            let universal = ring.delta(&w);
            let perfect = ring.delta_perfect(&w).expect("finite fields are perfect");
            assert_eq!(universal, perfect);
        }
    }
}

#[test]
fn distinguished_criterion_on_length_two() {
    // d = (c0, c1) has δ(d) = (c1, …); δ(d) is a unit exactly when the
    // coefficient of p in the Teichmüller expansion — whose p-th power is
    // c1 — is nonzero in the field.
    for q in [2u64, 3, 4] {
        let field = GfRing::new(q);
        let p = field.p();
        let ring = WittRing::new(field.clone(), p, 2);
        let small = WittRing::new(field.clone(), p, 1);
        for d in ring.enumerate().expect("finite") {
            let delta = ring.delta(&d);
            let delta_unit = small.is_unit(&delta);
            let p_coeff_unit = !field.is_zero(&d.comps[1]);
            assert_eq!(delta_unit, p_coeff_unit, "mismatch at {}", ring.render(&d));
        }
    }
}

#[test]
fn tate_twist_weight_zero_fixed_points() {
    // Oracle: exhaustive enumeration of Frobenius fixed points, which must
    // number p^m; the kernel invariants must describe a module of the same
    // size, namely one free summand over ℤ/p^m.
    let cases: Vec<(u64, usize)> = vec![
        (2, 1), (2, 2), (2, 3),
        (3, 1), (3, 2), (3, 3),
        (4, 1), (4, 2), (4, 3),
        (9, 1), (9, 2),
    ];
    for (q, m) in cases {
        let field = GfRing::new(q);
        let p = field.p();
        let ring = WittRing::new(field.clone(), p, m);
        let fixed = ring
            .enumerate()
            .expect("finite")
            .into_iter()
            .filter(|w| {
                let image = ring.frobenius_perfect(w).expect("perfect");
                image == *w
            })
            .count();
        assert_eq!(fixed as u64, (p as u64).pow(m as u32), "fixed-point count at q={q}, m={m}");

        let report = tate_twist_invariants(q, m, 0);
        assert_eq!(report.h0.free_rank, 1, "H⁰ at q={q}, m={m}");
        assert!(report.h0.torsion.is_empty());
        // For any endomorphism of a finite module |coker| = |ker|, so H¹
        // also has p^m elements; its module structure must be one free
        // summand as well.
        assert_eq!(report.h1.free_rank, 1, "H¹ at q={q}, m={m}");
        assert!(report.h1.torsion.is_empty());
    }
}

#[test]
fn tate_twist_weight_zero_prime_field_is_identity_map() {
    // Over F_p the Frobenius is the identity, the map is zero, and both
    // cohomologies are the full module ℤ/p^m.
    for (p, m) in [(2u64, 3usize), (3, 2)] {
        let report = tate_twist_invariants(p, m, 0);
        assert!(report.matrix.is_zero(), "φ − 1 must vanish on W_m(F_p)");
        assert_eq!((report.h0.free_rank, report.h1.free_rank), (1, 1));
        assert!(report.h0.torsion.is_empty() && report.h1.torsion.is_empty());
    }
}

#[test]
fn tate_twist_weight_one_kernel_enumeration() {
    // Oracle: direct kernel enumeration of y ↦ φ(y) − p·y.
    let cases: Vec<(u64, usize)> = vec![(2, 2), (2, 3), (3, 2), (3, 3), (4, 2), (9, 2)];
    for (q, m) in cases {
        let field = GfRing::new(q);
        let p = field.p();
        let ring = WittRing::new(field.clone(), p, m);
        let kernel = ring
            .enumerate()
            .expect("finite")
            .into_iter()
            .filter(|w| {
                let image = ring
                    .sub(
                        &ring.frobenius_perfect(w).expect("perfect"),
                        &ring.scalar_int(&BigInt::from(p), w),
                    )
                    .unwrap();
                ring.is_zero(&image)
            })
            .count();
        assert_eq!(kernel, 1, "kernel must be trivial at q={q}, m={m}");

        let report = tate_twist_invariants(q, m, 1);
        assert!(report.h0.is_zero(), "H⁰ at q={q}, m={m}");
        assert!(report.h1.is_zero(), "H¹ at q={q}, m={m}");
    }
}

#[test]
fn structure_polynomials_precompute_and_cache() {
    // Integrality is asserted inside the ghost solver; these calls would
    // panic on any non-exact division.
    let a = structure_polys(2, 4);
    let b = structure_polys(2, 4);
    assert!(std::sync::Arc::ptr_eq(&a, &b), "cache must return the same instance");
    let big = structure_polys(5, 3);
    assert_eq!(big.sum.len(), 3);
    // Frozen spot check: S₁ = x1 + y1 − x0·y0 at p = 2.
    let s1 = &structure_polys(2, 2).sum[1];
    assert_eq!(s1.coeff_of(&[1, 0, 1, 0]), BigInt::from(-1));
    assert_eq!(s1.coeff_of(&[0, 1, 0, 0]), BigInt::from(1));
    assert_eq!(s1.coeff_of(&[0, 0, 0, 1]), BigInt::from(1));
}

#[test]
fn witt_vector_serialization_shape() {
    let ring = WittRing::new(ZmodRing::from_u64(8), 2, 3);
    let a = ring.from_comps(vec![BigInt::from(1), BigInt::from(5), BigInt::from(2)]);
    let v = ring.to_json(&a);
    assert_eq!(v["p"], 2);
    assert_eq!(v["m"], 3);
    assert_eq!(v["comps"].as_array().unwrap().len(), 3);
}

#[test]
fn tate_twist_report_serialization() {
    let report = tate_twist_invariants(4, 2, 1);
    let v = report.to_json();
    assert_eq!(v["q"], 4);
    assert_eq!(v["field_degree"], 2);
    assert_eq!(v["y_coordinate"], true);
    assert!(v["matrix"]["entries"].is_array() || v["matrix"].is_object());
}
