//! The crystalline two-term complex computing syntomic cohomology of a
//! finite field: over A = W(F_q) with d = p, the weight-n complex is
//! x ↦ φ(x)/p^n − x on p^n·A. Substituting x = p^n·y makes the division
//! exact at finite length, giving y ↦ φ(y) − p^n·y on W_m(F_q) itself.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use base_arith::{ChainRing, GfRing, RingOps};
use homology::{cokernel_invariants, kernel_invariants, ChainMatrix, InvariantFactors};

use crate::witt::{WittRing, WittVec};

/// Coordinates of w in the ℤ/p^m-basis {[1], [g], …, [g^{k−1}]} of
/// W_m(F_q), extracted one p-digit at a time: read the residue from the
/// first component, subtract its Teichmüller combination, divide by p
/// (a shift plus p-th roots on a perfect base), repeat.
pub fn teichmuller_coordinates(field: &GfRing, m: usize, w: &WittVec<Vec<u64>>) -> Vec<BigInt> {
    let p = field.p();
    let k = field.degree();
    assert_eq!(w.len(), m);
    let mut coords = vec![BigInt::zero(); k];
    let mut p_level = BigInt::one();
    let mut cur = w.clone();
    for level in 0..m {
        let len = m - level;
        let ring = WittRing::new(field.clone(), p, len);
        let a0 = cur.comps[0].clone();
        for (j, digit) in a0.iter().enumerate() {
            coords[j] += &p_level * BigInt::from(*digit);
        }
        if len == 1 {
            break;
        }
        let mut teich_sum = ring.zero();
        for (j, digit) in a0.iter().enumerate() {
            let basis = field.pow(&field.gen(), j as u32);
            let scaled = ring.scalar_int(&BigInt::from(*digit), &ring.teichmuller(basis));
            teich_sum = ring.add(&teich_sum, &scaled).expect("lengths agree");
        }
        let diff = ring.sub(&cur, &teich_sum).expect("lengths agree");
        assert!(
            field.is_zero(&diff.comps[0]),
            "digit subtraction must clear the first component"
        );
        // diff = p·b = V(F(b)): shift down and take p-th roots.
        let comps: Vec<Vec<u64>> = diff.comps[1..]
            .iter()
            .map(|c| field.frobenius_root(c).expect("finite fields are perfect"))
            .collect();
        cur = WittVec { comps };
        p_level *= BigInt::from(p);
    }
    coords
}

/// Rebuild Σ_j coords_j·[g^j]; inverse of `teichmuller_coordinates`.
pub fn from_teichmuller_coordinates(
    field: &GfRing,
    m: usize,
    coords: &[BigInt],
) -> WittVec<Vec<u64>> {
    let ring = WittRing::new(field.clone(), field.p(), m);
    let mut acc = ring.zero();
    for (j, c) in coords.iter().enumerate() {
        let basis = field.pow(&field.gen(), j as u32);
        let t = ring.scalar_int(c, &ring.teichmuller(basis));
        acc = ring.add(&acc, &t).expect("lengths agree");
    }
    acc
}

pub struct TateTwistReport {
    pub q: u64,
    pub p: u64,
    pub field_degree: usize,
    pub m: usize,
    pub n: u32,
    /// The endomorphism y ↦ φ(y) − p^n·y in the Teichmüller basis.
    pub matrix: ChainMatrix,
    pub h0: InvariantFactors,
    pub h1: InvariantFactors,
}

impl TateTwistReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "q": self.q,
            "p": self.p,
            "field_degree": self.field_degree,
            "m": self.m,
            "n": self.n,
            "y_coordinate": true,
            "matrix": self.matrix.to_json(),
            "h0": self.h0.to_json(),
            "h1": self.h1.to_json(),
        })
    }
}

/// Invariant factors of H⁰ and H¹ of the weight-n crystalline complex over
/// W_m(F_q), as modules over ℤ/p^m.
pub fn tate_twist_invariants(q: u64, m: usize, n: u32) -> TateTwistReport {
    let field = GfRing::new(q);
    let p = field.p();
    let k = field.degree();
    assert!(m >= n as usize + 1, "need m ≥ n + 1 for a faithful window");

    let witt = WittRing::new(field.clone(), p, m);
    let pn = BigInt::from(p).pow(n);
    let chain = ChainRing::zmod(p, m as u32).expect("valid chain ring");
    let mut mat = ChainMatrix::zero(&chain, k, k);
    for j in 0..k {
        let basis = field.pow(&field.gen(), j as u32);
        let w = witt.teichmuller(basis);
        let image = witt
            .sub(
                &witt.frobenius_perfect(&w).expect("finite fields are perfect"),
                &witt.scalar_int(&pn, &w),
            )
            .expect("lengths agree");
        let col = teichmuller_coordinates(&field, m, &image);
        for (i, c) in col.iter().enumerate() {
            mat.set(i, j, chain.from_bigint(c));
        }
    }

    let h0 = kernel_invariants(&mat);
    let h1 = cokernel_invariants(&mat);
    TateTwistReport {
        q,
        p,
        field_degree: k,
        m,
        n,
        matrix: mat,
        h0,
        h1,
    }
}

/// Exhaustive check that every non-unit of W_m(F_2[x]/(x²)) kills something:
/// pairs each non-unit with an explicit nonzero annihilator.
pub struct ZeroDivisorReport {
    pub m: usize,
    pub total: usize,
    pub units: usize,
    /// (non-unit, annihilator) rendered pairs.
    pub witnesses: Vec<(String, String)>,
}

pub fn no_nonzerodivisor_witness(m: usize) -> ZeroDivisorReport {
    use base_arith::DualRing;
    assert!(m <= 3, "exhaustive sweep is sized for m ≤ 3");
    let ring = DualRing::new(GfRing::new(2));
    let witt = WittRing::new(ring.clone(), 2, m);
    let all = witt.enumerate().expect("4^m elements");
    let total = all.len();
    let mut units = 0usize;
    let mut witnesses = Vec::new();
    for w in &all {
        if witt.is_unit(w) {
            units += 1;
            continue;
        }
        if witt.is_zero(w) {
            continue;
        }
        let ann = all.iter().find(|a| {
            !witt.is_zero(a) && witt.is_zero(&witt.mul(w, a).expect("lengths agree"))
        });
        let ann = ann.expect("every non-unit must be a zero divisor");
        witnesses.push((witt.render(w), witt.render(ann)));
    }
    ZeroDivisorReport {
        m,
        total,
        units,
        witnesses,
    }
}

impl ZeroDivisorReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "m": self.m,
            "total": self.total,
            "units": self.units,
            "witnesses": self.witnesses.iter()
                .map(|(w, a)| serde_json::json!({"nonunit": w, "annihilator": a}))
                .collect::<Vec<_>>(),
        })
    }
}
