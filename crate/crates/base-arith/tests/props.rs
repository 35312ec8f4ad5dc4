//! Randomized algebraic laws for the base ring and its Frobenius.

use num_bigint::BigInt;
use proptest::prelude::*;

use base_arith::BaseRing;

fn ring_params() -> impl Strategy<Value = (u64, u32, u32, u32)> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        1u32..=4,
        1u32..=5,
        0u32..=2,
    )
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-1000i64..1000, 0..=5)
}

fn elem(ring: &BaseRing, raw: &[i64]) -> base_arith::BaseElem {
    ring.elem(raw.iter().map(|&c| BigInt::from(c)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((p, n, m, k) in ring_params(), a in coeffs(), b in coeffs(), c in coeffs()) {
        let ring = BaseRing::create(p, n, m, k).unwrap();
        let (a, b, c) = (elem(&ring, &a), elem(&ring, &b), elem(&ring, &c));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.neg()), ring.zero());
        prop_assert_eq!(a.mul(&ring.one()), a.clone());
    }

    #[test]
    fn frobenius_is_a_ring_map((p, n, m, k) in ring_params(), a in coeffs(), b in coeffs()) {
        let ring = BaseRing::create(p, n, m, k).unwrap();
        let (a, b) = (elem(&ring, &a), elem(&ring, &b));
        prop_assert_eq!(a.add(&b).frobenius(), a.frobenius().add(&b.frobenius()));
        prop_assert_eq!(a.mul(&b).frobenius(), a.frobenius().mul(&b.frobenius()));
    }

    #[test]
    fn frobenius_lifts_the_p_power_map((p, n, m, k) in ring_params(), a in coeffs()) {
        // φ(x) ≡ x^p mod p, witnessed at one digit less of p-precision.
        let ring = BaseRing::create(p, n, m, k).unwrap();
        let a = elem(&ring, &a);
        if n > 1 {
            let small = ring.with_prec_p(1).unwrap();
            prop_assert_eq!(
                a.frobenius().reduce_to(&small),
                a.pow(p as u32).reduce_to(&small)
            );
        } else {
            prop_assert_eq!(a.frobenius(), a.pow(p as u32));
        }
    }

    #[test]
    fn units_invert((p, n, m, k) in ring_params(), a in coeffs()) {
        let ring = BaseRing::create(p, n, m, k).unwrap();
        let a = elem(&ring, &a);
        if a.is_unit() {
            let inv = a.inv().unwrap();
            prop_assert_eq!(a.mul(&inv), ring.one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn lift_then_reduce_is_identity((p, n, m, k) in ring_params(), a in coeffs()) {
        let ring = BaseRing::create(p, n, m, k).unwrap();
        let a = elem(&ring, &a);
        prop_assert_eq!(ring.from_t_poly(&a.lift_t()), a);
    }
}
