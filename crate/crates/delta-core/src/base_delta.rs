//! Delta on the truncated base ring `B(p, N, M, K) = ℤ[t]/(p^N, (t-1)^M)`
//! and the two distinguished-element tests.
//!
//! `δ(d)` is computed on the canonical integer representative in `ℤ[t]`:
//! `(φ(lift) - lift^p)/p` is exact there because `f(t^p) ≡ f(t)^p mod p`.
//! Changing the representative by `p^N·g + (t-1)^M·h` changes the result by
//! a multiple of `(p^(N-1), (t-1)^M)`, so the operation is well-defined with
//! target precision `N-1`: one p-digit is consumed, and callers needing the
//! unit test must start from `N ≥ 2`.

use base_arith::{solve_zmod, BaseElem, BaseRing, IntPoly};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::DeltaError;

/// `δ(d)` for `d` in `B(p, N, M, K)`, landing in `B(p, N-1, M, K)`.
pub fn delta_base(d: &BaseElem) -> Result<BaseElem, DeltaError> {
    let ring = d.ring();
    let n = ring.prec_p();
    if n <= 1 {
        return Err(DeltaError::PrecisionLoss(n as u64));
    }
    let lift = d.lift_t();
    let vars = ring.tvar();
    let t_to_p = IntPoly::var(vars.clone(), 0).pow(ring.p() as u32);
    let phi_lift = lift.subst(vars, &[t_to_p]);
    let num = phi_lift.sub(&lift.pow(ring.p() as u32));
    let quot = num.div_int_exact(&BigInt::from(ring.p())).unwrap_or_else(|rem| {
        panic!("defect: f(t^p) - f(t)^p should be divisible by p, remainder {rem}")
    });
    let target = ring.with_prec_p(n - 1).expect("prec_p - 1 >= 1");
    Ok(target.from_t_poly(&quot))
}

/// A distinguished element is one whose `δ` is a unit.  Requires `N ≥ 2`
/// so that a full p-digit of `δ(d)` survives truncation.
pub fn is_distinguished(d: &BaseElem) -> Result<bool, DeltaError> {
    Ok(delta_base(d)?.is_unit())
}

/// Witness for `p = a·d + b·φ(d)`.
#[derive(Clone, Debug)]
pub struct MembershipWitness {
    pub a: BaseElem,
    pub b: BaseElem,
}

/// Decide whether `p` lies in the ideal `(d, φ(d))` of the truncated base
/// ring, returning an explicit witness pair on success.
///
/// The truncated ring is a finite free `ℤ/p^N`-module on the `(t-1)`-power
/// basis, so the membership question is the solvability of one `M × 2M`
/// linear system over `ℤ/p^N`: the columns are `d·(t-1)^i` and
/// `φ(d)·(t-1)^i`.  The solver's failure certificate is exact, so a `false`
/// answer means no witness exists at this precision.
pub fn distinguished_membership_check(
    d: &BaseElem,
) -> (bool, Option<MembershipWitness>) {
    let ring = d.ring().clone();
    let m = ring.prec_t() as usize;
    let phi_d = d.frobenius();
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(2 * m);
    for source in [d, &phi_d] {
        let mut shifted = source.clone();
        for i in 0..m {
            if i > 0 {
                // Multiply by (t-1): shift the coefficient vector up.
                let mut coeffs = shifted.coeffs().to_vec();
                coeffs.insert(0, BigInt::zero());
                coeffs.truncate(m);
                shifted = ring.elem(coeffs);
            }
            columns.push(shifted.coeffs().to_vec());
        }
    }
    // Row-major M × 2M system.
    let rows: Vec<Vec<BigInt>> = (0..m)
        .map(|r| (0..2 * m).map(|c| columns[c][r].clone()).collect())
        .collect();
    let mut rhs = vec![BigInt::zero(); m];
    rhs[0] = BigInt::from(ring.p());
    match solve_zmod(&ring.p_big(), ring.prec_p(), &rows, &rhs) {
        None => (false, None),
        Some(sol) => {
            let a = ring.elem(sol[..m].to_vec());
            let b = ring.elem(sol[m..].to_vec());
            let p_elem = ring.from_bigint(&BigInt::from(ring.p()));
            let recombined = a.mul(d).add(&b.mul(&phi_d));
            assert_eq!(
                recombined, p_elem,
                "defect: solver returned a non-witness for p in (d, phi(d))"
            );
            (true, Some(MembershipWitness { a, b }))
        }
    }
}

/// The q-analog `[p]_q = 1 + q + … + q^(p-1)` in the given base ring.
pub fn q_analog_of_p(ring: &BaseRing) -> BaseElem {
    let mut acc = ring.zero();
    let mut power = ring.one();
    let q = ring.q();
    for _ in 0..ring.p() {
        acc = acc.add(&power);
        power = power.mul(&q);
    }
    acc
}

/// `p` as an element of the base ring.
pub fn p_elem(ring: &BaseRing) -> BaseElem {
    ring.from_bigint(&BigInt::from(ring.p()))
}

/// `q - 1` as an element of the base ring.
pub fn q_minus_one_elem(ring: &BaseRing) -> BaseElem {
    ring.q().sub(&ring.one())
}
