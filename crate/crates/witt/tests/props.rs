use base_arith::{BigIntRing, GfRing, ZmodRing};
use delta_core::{DeltaPoly, DeltaRing};
use num_bigint::BigInt;
use proptest::prelude::*;
use witt::{from_teichmuller_coordinates, teichmuller_coordinates, WittRing};

fn comps_strategy(m: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, m)
}

fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ghost_is_additive_and_multiplicative(
        p in prop_oneof![Just(2u64), Just(3)],
        m in 1usize..=4,
        raw_a in comps_strategy(4),
        raw_b in comps_strategy(4),
    ) {
        let ring = WittRing::new(BigIntRing, p, m);
        let a = ring.from_comps(to_big(&raw_a[..m]));
        let b = ring.from_comps(to_big(&raw_b[..m]));
        let gh_a = ring.ghost(&a);
        let gh_b = ring.ghost(&b);

        let sum = ring.add(&a, &b).unwrap();
        let gh_sum = ring.ghost(&sum);
        for i in 0..m {
            prop_assert_eq!(&gh_sum[i], &(&gh_a[i] + &gh_b[i]));
        }

        let prod = ring.mul(&a, &b).unwrap();
        let gh_prod = ring.ghost(&prod);
        for i in 0..m {
            prop_assert_eq!(&gh_prod[i], &(&gh_a[i] * &gh_b[i]));
        }

        let neg = ring.neg(&a);
        let gh_neg = ring.ghost(&neg);
        for i in 0..m {
            prop_assert_eq!(&gh_neg[i], &(-&gh_a[i]));
        }
    }

    #[test]
    fn frobenius_shifts_ghost_components(
        p in prop_oneof![Just(2u64), Just(3)],
        m in 2usize..=4,
        raw in comps_strategy(4),
    ) {
        let ring = WittRing::new(BigIntRing, p, m);
        let small = WittRing::new(BigIntRing, p, m - 1);
        let a = ring.from_comps(to_big(&raw[..m]));
        let fa = ring.frobenius(&a);
        let gh_a = ring.ghost(&a);
        let gh_fa = small.ghost(&fa);
        for i in 0..m - 1 {
            prop_assert_eq!(&gh_fa[i], &gh_a[i + 1]);
        }
    }

    #[test]
    fn integer_embedding_is_a_ring_map(
        p in prop_oneof![Just(2u64), Just(3)],
        m in 1usize..=3,
        x in -20i64..=20,
        y in -20i64..=20,
    ) {
        let ring = WittRing::new(ZmodRing::from_u64(p.pow(m as u32 + 1)), p, m);
        let fx = ring.from_int(&BigInt::from(x));
        let fy = ring.from_int(&BigInt::from(y));
        prop_assert_eq!(
            ring.add(&fx, &fy).unwrap(),
            ring.from_int(&BigInt::from(x + y))
        );
        prop_assert_eq!(
            ring.mul(&fx, &fy).unwrap(),
            ring.from_int(&BigInt::from(x * y))
        );
    }

    #[test]
    fn verschiebung_is_additive(
        p in prop_oneof![Just(2u64), Just(3)],
        m in 2usize..=4,
        raw_a in comps_strategy(4),
        raw_b in comps_strategy(4),
    ) {
        let ring = WittRing::new(BigIntRing, p, m);
        let a = ring.from_comps(to_big(&raw_a[..m]));
        let b = ring.from_comps(to_big(&raw_b[..m]));
        let lhs = ring.v_shift(&ring.add(&a, &b).unwrap());
        let rhs = ring.add(&ring.v_shift(&a), &ring.v_shift(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn coordinates_roundtrip_from_random_digits(
        q in prop_oneof![Just(4u64), Just(9)],
        m in 1usize..=3,
        raw in prop::collection::vec(0i64..=(1 << 10), 2),
    ) {
        let field = GfRing::new(q);
        let p = field.p();
        let pm = BigInt::from(p).pow(m as u32);
        let coords: Vec<BigInt> = raw.iter().map(|&x| BigInt::from(x) % &pm).collect();
        let w = from_teichmuller_coordinates(&field, m, &coords);
        let back = teichmuller_coordinates(&field, m, &w);
        prop_assert_eq!(back, coords);
    }
}

/// w(f) = (δ₀(f), …, δ_(m−1)(f)) as a Witt vector of delta-polynomials.
fn joyal_witt_vector(
    wring: &WittRing<base_arith::PolyRing>,
    f: &DeltaPoly,
) -> witt::WittVec<base_arith::IntPoly> {
    let comps: Vec<base_arith::IntPoly> = (0..wring.m())
        .map(|n| f.joyal_delta_n(n).expect("depth suffices").poly().clone())
        .collect();
    wring.from_comps(comps)
}

#[test]
fn joyal_map_is_a_ring_homomorphism_into_witt_vectors() {
    // Polynomial identities in the free delta-ring on two generators: the
    // map x ↦ (δ₀(x), δ₁(x), δ₂(x), …) respects ⊞ and ⊗ at lengths 2, 3.
    for p in [2u64, 3] {
        for m in [2usize, 3] {
            let dring = DeltaRing::new(p, 2);
            let wring = WittRing::new(dring.poly_ring(), p, m);
            let x = dring.gen(0);
            let y = dring.gen(1);
            let pairs: Vec<(DeltaPoly, DeltaPoly)> = if m == 2 {
                vec![
                    (x.clone(), y.clone()),
                    (x.add(&y.pow(2)), x.mul(&y).sub(&dring.from_int(3))),
                ]
            } else {
                // Keep the degree small at length 3; the generator pair is
                // the universal case anyway.
                vec![(x.clone(), y.clone())]
            };
            for (f, g) in pairs {
                let wf = joyal_witt_vector(&wring, &f);
                let wg = joyal_witt_vector(&wring, &g);
                let sum_direct = joyal_witt_vector(&wring, &f.add(&g));
                let prod_direct = joyal_witt_vector(&wring, &f.mul(&g));
                assert_eq!(wring.add(&wf, &wg).unwrap(), sum_direct, "p={p}, m={m}");
                assert_eq!(wring.mul(&wf, &wg).unwrap(), prod_direct, "p={p}, m={m}");
            }
        }
    }
}
