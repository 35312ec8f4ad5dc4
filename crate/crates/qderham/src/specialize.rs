//! Specialization of a q-Koszul complex along q ↦ 1 (crystalline direction)
//! or q ↦ ζ_p (Hodge–Tate direction), producing matrices over the small
//! chain rings where Smith normal form is available.

use std::collections::BTreeMap;

use base_arith::{BaseElem, ChainElem, ChainRing};
use homology::ChainMatrix;
use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::FramedAlgebra;
use crate::complex::{insertion_sign, subset_with, subsets, Column, KoszulComplex};
use crate::error::DerhamError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpecTarget {
    /// q ↦ 1 into ℤ/p^N.
    QToOne,
    /// q ↦ ζ_p into ℤ[ζ_p]/(p, ζ−1)-adic truncation ℤ[u]/(p^N, Φ_p(u)).
    QToZeta,
}

impl SpecTarget {
    pub fn label(&self) -> &'static str {
        match self {
            SpecTarget::QToOne => "q_to_1",
            SpecTarget::QToZeta => "q_to_zeta",
        }
    }
}

/// A specialized complex: the operator matrices of the ∇_{q,s} with
/// coefficients pushed into the chain ring.
#[derive(Debug, Clone)]
pub struct SpecComplex {
    algebra: FramedAlgebra,
    target: SpecTarget,
    ring: ChainRing,
    basis: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
    ops: Vec<Vec<Column<ChainElem>>>,
}

/// Push one base coefficient into the chain ring of the target.
fn spec_entry(
    elem: &BaseElem,
    target: SpecTarget,
    ring: &ChainRing,
    p: u64,
    root_depth: u32,
) -> Result<ChainElem, DerhamError> {
    match target {
        SpecTarget::QToOne => Ok(ring.from_bigint(&elem.eval_t_1())),
        SpecTarget::QToZeta => {
            let lift = elem.lift_t();
            let deg = match lift.degree_in(0) {
                None => return Ok(ring.zero()),
                Some(d) => d,
            };
            let step = p.pow(root_depth) as u32;
            let mut raw = vec![BigInt::zero(); (deg / step + 1) as usize];
            for d in 0..=deg {
                let c = lift.coeff_of(&[d]);
                if c.is_zero() {
                    continue;
                }
                if d % step != 0 {
                    // The element genuinely involves a p-power root of q, so
                    // evaluating q at ζ_p has no well-defined image here.
                    return Err(DerhamError::RootDepthUnsupported { root_depth });
                }
                raw[(d / step) as usize] = c;
            }
            Ok(ring.from_u_poly(raw))
        }
    }
}

/// Specialize a built complex at precision `prec` (p-adic digits of the
/// target chain ring).
pub fn specialize(
    complex: &KoszulComplex,
    target: SpecTarget,
    prec: u32,
) -> Result<SpecComplex, DerhamError> {
    let algebra = complex.algebra().clone();
    let base = algebra.base();
    if prec > base.prec_p() {
        return Err(DerhamError::Precision {
            requested: prec,
            available: base.prec_p(),
        });
    }
    // q ↦ ζ_p proceeds through the canonical t-lift of each coefficient, and
    // that composite is a ring map only when the target nilpotency
    // prec·(p−1) is covered by the (t−1)-truncation of the base.  Deeper
    // requests would silently carry t-truncation error, so they are refused.
    if target == SpecTarget::QToZeta {
        let available = base.prec_t() / (base.p() as u32 - 1);
        if prec > available {
            return Err(DerhamError::Precision {
                requested: prec,
                available,
            });
        }
    }
    let ring = match target {
        SpecTarget::QToOne => ChainRing::zmod(base.p(), prec),
        SpecTarget::QToZeta => ChainRing::cyclotomic(base.p(), prec),
    }
    .expect("chain ring parameters are valid");

    let p = base.p();
    let root_depth = base.root_depth();
    let mut ops = Vec::with_capacity(complex.num_ops());
    for cols in complex.ops() {
        let mut spec_cols = Vec::with_capacity(cols.len());
        for col in cols {
            let mut out: Column<ChainElem> = BTreeMap::new();
            for (&i, c) in col {
                let v = spec_entry(c, target, &ring, p, root_depth)?;
                if !v.is_zero() {
                    out.insert(i, v);
                }
            }
            spec_cols.push(out);
        }
        ops.push(spec_cols);
    }

    let basis = complex.basis().to_vec();
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    Ok(SpecComplex { algebra, target, ring, basis, index, ops })
}

impl SpecComplex {
    pub fn algebra(&self) -> &FramedAlgebra {
        &self.algebra
    }

    pub fn target(&self) -> SpecTarget {
        self.target
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn index_of(&self, exps: &[i64]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn num_ops(&self) -> usize {
        self.ops.len()
    }

    pub fn op_column(&self, s: usize, j: usize) -> &Column<ChainElem> {
        &self.ops[s][j]
    }

    /// Dense matrix of ∇_{q,s} after specialization.
    pub fn op_matrix(&self, s: usize) -> ChainMatrix {
        let n = self.basis.len();
        let mut m = ChainMatrix::zero(&self.ring, n, n);
        for (j, col) in self.ops[s].iter().enumerate() {
            for (&i, c) in col {
                m.set(i, j, c.clone());
            }
        }
        m
    }

    /// Total degree of a basis monomial.
    pub fn mono_grade(&self, j: usize) -> i64 {
        self.basis[j].iter().sum()
    }

    /// Basis of Koszul degree c, optionally restricted to total grade g
    /// (monomial degree plus c): pairs (monomial index, subset index).
    pub fn kos_basis(&self, c: usize, grade: Option<i64>) -> Vec<(usize, usize)> {
        let r = self.ops.len();
        let subs = subsets(r, c);
        if subs.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for m in 0..self.basis.len() {
            if let Some(g) = grade {
                if self.mono_grade(m) + c as i64 != g {
                    continue;
                }
            }
            for t in 0..subs.len() {
                out.push((m, t));
            }
        }
        out
    }

    /// Matrix of the Koszul differential from degree c to degree c+1,
    /// optionally restricted to one total grade.
    pub fn kos_differential(&self, c: usize, grade: Option<i64>) -> ChainMatrix {
        let r = self.ops.len();
        let subs_c = subsets(r, c);
        let subs_next = subsets(r, c + 1);
        let next_index: BTreeMap<Vec<usize>, usize> = subs_next
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        let source = self.kos_basis(c, grade);
        let target = self.kos_basis(c + 1, grade);
        let target_index: BTreeMap<(usize, usize), usize> = target
            .iter()
            .enumerate()
            .map(|(i, &k)| (k, i))
            .collect();

        let mut d = ChainMatrix::zero(&self.ring, target.len(), source.len());
        for (col, &(m, ti)) in source.iter().enumerate() {
            let t_set = &subs_c[ti];
            for s in 0..r {
                if t_set.contains(&s) {
                    continue;
                }
                let sign = insertion_sign(t_set, s);
                let bigger = subset_with(t_set, s);
                let bigger_idx = next_index[&bigger];
                for (&m2, coeff) in &self.ops[s][m] {
                    let Some(&row) = target_index.get(&(m2, bigger_idx)) else {
                        // Graded restriction: ∇ of a grade-mismatched image
                        // cannot appear in a homogeneous block.
                        continue;
                    };
                    let signed = if sign >= 0 { coeff.clone() } else { coeff.neg() };
                    let cur = d.get(row, col).add(&signed);
                    d.set(row, col, cur);
                }
            }
        }
        d
    }

    /// The pair (d_prev, d_next) around Koszul degree i, optionally graded.
    pub fn boundary_pair(&self, i: usize, grade: Option<i64>) -> (ChainMatrix, ChainMatrix) {
        let middle = self.kos_basis(i, grade).len();
        let d_prev = if i == 0 {
            ChainMatrix::zero(&self.ring, middle, 0)
        } else {
            self.kos_differential(i - 1, grade)
        };
        let d_next = self.kos_differential(i, grade);
        (d_prev, d_next)
    }
}
