use base_arith::IntPoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qcalc::{q_binomial, q_factorial, q_int, q_vars, verify_floor_factorial, QModel};

/// A random polynomial in Z[q] from (coefficient, exponent) pairs.
fn poly_from_terms(terms: &[(i64, u8)]) -> IntPoly {
    let vars = q_vars();
    let mut acc = IntPoly::zero(vars.clone());
    for &(c, e) in terms {
        acc = acc.add(&IntPoly::monomial(vars.clone(), vec![e as u32], BigInt::from(c)));
    }
    acc
}

fn terms_strategy() -> impl Strategy<Value = Vec<(i64, u8)>> {
    prop::collection::vec((-6i64..=6, 0u8..=4), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn q_pascal_recurrence(a in 1u64..=18, bs in 0u64..=18) {
        // [a choose b]_q = [a-1 choose b-1]_q + q^b [a-1 choose b]_q.
        let b = bs.min(a);
        let lhs = q_binomial(a, b).unwrap();
        let rhs = if b == 0 {
            q_binomial(a - 1, 0).unwrap()
        } else if b == a {
            q_binomial(a - 1, b - 1).unwrap()
        } else {
            let shift = IntPoly::monomial(q_vars(), vec![b as u32], BigInt::one());
            q_binomial(a - 1, b - 1).unwrap().add(&shift.mul(&q_binomial(a - 1, b).unwrap()))
        };
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_exact_rational_identity(
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
        terms in terms_strategy(),
    ) {
        // Clearing denominators in gamma(x) = phi(x)/[p]_q - (phi(x)-x^p)/p
        // gives p [p]_q gamma(x) = [p]_q x^p + phi(x) (p - [p]_q), an
        // identity of integer polynomials checked verbatim.
        let model = QModel::new(p);
        let x = model.q_minus_one().mul(&poly_from_terms(&terms));
        let g = model.gamma(&x).unwrap();
        let p_poly = model.from_int(p as i64);
        let lhs = p_poly.mul(&model.p_analog()).mul(&g);
        let xp = x.pow(p as u32);
        let rhs = model
            .p_analog()
            .mul(&xp)
            .add(&model.phi(&x).mul(&p_poly.sub(&model.p_analog())));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_specializes_to_divided_p_th_power_at_q_one(
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
        terms in terms_strategy(),
    ) {
        let model = QModel::new(p);
        let x = model.q_minus_one().mul(&poly_from_terms(&terms));
        let g = model.gamma(&x).unwrap();
        let lhs = BigRational::from(g.eval_int(&[BigInt::one()]));
        let x1 = BigRational::from(x.eval_int(&[BigInt::one()]));
        let rhs = x1.pow(p as i32) / BigRational::from(BigInt::from(p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_sum_and_scale_identities_on_random_elements(
        p in prop_oneof![Just(2u64), Just(3)],
        xt in terms_strategy(),
        yt in terms_strategy(),
        ft in terms_strategy(),
    ) {
        let model = QModel::new(p);
        let x = model.q_minus_one().mul(&poly_from_terms(&xt));
        let y = model.q_minus_one().mul(&poly_from_terms(&yt));
        let f = poly_from_terms(&ft);
        prop_assert!(model.gamma_sum_identity(&x, &y).unwrap());
        prop_assert!(model.gamma_scale_identity(&f, &x).unwrap());
    }

    #[test]
    fn gamma_stability_of_the_augmentation_ideal(
        p in prop_oneof![Just(2u64), Just(3)],
        terms in terms_strategy(),
    ) {
        // gamma of a multiple of (q-1) is again a multiple of (q-1):
        // membership by exact division.
        let model = QModel::new(p);
        let x = model.q_minus_one().mul(&poly_from_terms(&terms));
        let g = model.gamma(&x).unwrap();
        prop_assert!(g.exact_div(&model.q_minus_one()).is_ok());
    }

    #[test]
    fn floor_factorial_cofactor_matches_direct_product(
        p in prop_oneof![Just(2u64), Just(3), Just(5)],
        num in 0u64..=6,
        k in 0u32..=2,
    ) {
        // Oracle: the cofactor must be the literal product of [j]_q over
        // floor(i)p < j <= floor(ip), all indices coprime to p.
        let i = BigRational::new(BigInt::from(num), BigInt::from(p.pow(k)));
        let cert = verify_floor_factorial(p, &i).unwrap();
        let mut expected = IntPoly::one(q_vars());
        for j in cert.floor_i_times_p + 1..=cert.floor_ip {
            prop_assert!(j % p != 0, "index {j} in the gap must be coprime to p");
            expected = expected.mul(&q_int(j));
        }
        prop_assert_eq!(&cert.cofactor, &expected);
        prop_assert!(!(&cert.cofactor_at_one % BigInt::from(p)).is_zero());
    }

    #[test]
    fn factorial_degree_and_value(n in 0u64..=25) {
        let f = q_factorial(n);
        let expected_degree = (n * n.saturating_sub(1) / 2) as u32;
        prop_assert_eq!(f.degree_in(0).unwrap_or(0), expected_degree);
        let mut nf = BigInt::one();
        for i in 1..=n {
            nf *= BigInt::from(i);
        }
        prop_assert_eq!(f.eval_int(&[BigInt::one()]), nf);
    }
}
