//! Property tests: operator identities on random elements, specialization
//! as a coefficient ring map, and pivot-order independence of the graded
//! invariant extraction.

use base_arith::{BaseElem, BaseRing, ChainRing};
use proptest::prelude::*;
use qderham::{build_complex, graded_invariants, specialize, FramedAlgebra, SpecTarget};

fn base() -> BaseRing {
    BaseRing::create(3, 2, 4, 0).expect("valid base parameters")
}

/// A random scalar c·q^e with small integer c.
fn scalar(b: &BaseRing, c: i64, e: u8) -> BaseElem {
    b.from_i64(c).mul(&b.q().pow(e as u32))
}

/// A random element of the Laurent torus algebra supported on exponents
/// in −2..=2, far enough inside the window that sums and products of two
/// such elements are represented exactly.
fn small_elem(
    a: &FramedAlgebra,
    b: &BaseRing,
    terms: &[(i64, i64, u8)],
) -> qderham::AlgElem {
    let mut acc = a.zero();
    for &(exp, c, e) in terms {
        acc = acc.add(&a.monomial(&[exp], scalar(b, c, e)).expect("in window"));
    }
    acc
}

fn terms_strategy() -> impl Strategy<Value = Vec<(i64, i64, u8)>> {
    prop::collection::vec((-2i64..=2, -5i64..=5, 0u8..=2), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn twisted_leibniz_holds_for_windowed_products(
        fs in terms_strategy(),
        gs in terms_strategy(),
    ) {
        let b = base();
        let a = FramedAlgebra::standard(b.clone(), &[("x", true)], 8)
            .expect("valid algebra");
        let f = small_elem(&a, &b, &fs);
        let g = small_elem(&a, &b, &gs);
        let lhs = a.nabla(&f.mul(&g), 0);
        let rhs = a
            .nabla(&f, 0)
            .mul(&g)
            .add(&a.gamma(&f, 0).mul(&a.nabla(&g, 0)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn nablas_commute_on_the_plane(
        terms in prop::collection::vec((0i64..=5, 0i64..=5, -5i64..=5, 0u8..=2), 1..5),
    ) {
        let b = base();
        let a = FramedAlgebra::standard(b.clone(), &[("x", false), ("y", false)], 5)
            .expect("valid algebra");
        let mut f = a.zero();
        for &(ex, ey, c, e) in &terms {
            f = f.add(&a.monomial(&[ex, ey], scalar(&b, c, e)).expect("in window"));
        }
        let xy = a.nabla(&a.nabla(&f, 1), 0);
        let yx = a.nabla(&a.nabla(&f, 0), 1);
        prop_assert_eq!(xy, yx);
    }

    #[test]
    fn specialization_is_a_ring_map_on_coefficients(
        xs in prop::collection::vec((-9i64..=9, 0u8..=3, 0u8..=2), 1..4),
        ys in prop::collection::vec((-9i64..=9, 0u8..=3, 0u8..=2), 1..4),
    ) {
        let b = base();
        let build = |terms: &[(i64, u8, u8)]| -> BaseElem {
            let mut acc = b.zero();
            for &(c, qe, te) in terms {
                acc = acc.add(
                    &b.from_i64(c).mul(&b.q().pow(qe as u32)).mul(&b.t().pow(te as u32)),
                );
            }
            acc
        };
        let x = build(&xs);
        let y = build(&ys);

        // q ↦ 1 lands in ℤ/p², through integer evaluation at t = 1.
        let r1 = ChainRing::zmod(3, 2).expect("valid chain ring");
        let at_one = |v: &BaseElem| r1.from_bigint(&v.eval_t_1());
        prop_assert_eq!(at_one(&x.add(&y)), at_one(&x).add(&at_one(&y)));
        prop_assert_eq!(at_one(&x.mul(&y)), at_one(&x).mul(&at_one(&y)));

        // q ↦ ζ_p lands in ℤ[ζ_p]/π^{N(p−1)}, through the integer t-lift.
        let rz = ChainRing::cyclotomic(3, 2).expect("valid chain ring");
        let at_zeta = |v: &BaseElem| rz.from_t_poly(&v.lift_t());
        prop_assert_eq!(at_zeta(&x.add(&y)), at_zeta(&x).add(&at_zeta(&y)));
        prop_assert_eq!(at_zeta(&x.mul(&y)), at_zeta(&x).mul(&at_zeta(&y)));
    }

    #[test]
    fn snf_pivot_order_is_irrelevant(
        i in 0usize..=1,
        grade in -5i64..=6,
        zeta in any::<bool>(),
    ) {
        let b = base();
        let a = FramedAlgebra::standard(b.clone(), &[("x", true)], 5)
            .expect("valid algebra");
        let kc = build_complex(&a).expect("operators commute");
        let target = if zeta { SpecTarget::QToZeta } else { SpecTarget::QToOne };
        let sc = specialize(&kc, target, 2).expect("specializes");
        let forward = graded_invariants(&sc, i, Some(grade), false);
        let reversed = graded_invariants(&sc, i, Some(grade), true);
        prop_assert_eq!(forward, reversed);
    }
}
