//! The q-Koszul complex of the commuting q-derivations ∇_{q,1..r} on a
//! framed algebra, stored as sparse operator columns over the monomial
//! basis of the degree window.

use std::collections::BTreeMap;

use base_arith::BaseElem;

use crate::algebra::{AlgElem, CoordAction, FramedAlgebra, Framing};
use crate::error::DerhamError;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Sparse column: row index ↦ coefficient.
pub(crate) type Column<T> = BTreeMap<usize, T>;

#[derive(Debug, Clone)]
pub struct KoszulComplex {
    algebra: FramedAlgebra,
    basis: Vec<Vec<i64>>,
    index: BTreeMap<Vec<i64>, usize>,
    ops: Vec<Vec<Column<BaseElem>>>,
}

/// All window monomials in lexicographic order, with their index map.
pub(crate) fn enumerate_basis(
    algebra: &FramedAlgebra,
) -> (Vec<Vec<i64>>, BTreeMap<Vec<i64>, usize>) {
    let r = algebra.num_vars();
    let mut basis = Vec::new();
    let mut current = vec![0i64; r];
    fn rec(
        algebra: &FramedAlgebra,
        s: usize,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if s == algebra.num_vars() {
            out.push(current.clone());
            return;
        }
        for e in algebra.lo(s)..=algebra.window() {
            current[s] = e;
            rec(algebra, s + 1, current, out);
        }
    }
    rec(algebra, 0, &mut current, &mut basis);
    let index = basis
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), i))
        .collect();
    (basis, index)
}

/// Build the complex: materialize every ∇_{q,s} as a sparse matrix over the
/// monomial basis and assert that the operators commute pairwise.
pub fn build_complex(algebra: &FramedAlgebra) -> Result<KoszulComplex, DerhamError> {
    let (basis, index) = enumerate_basis(algebra);
    let r = algebra.num_vars();
    let mut ops = Vec::with_capacity(r);
    for s in 0..r {
        let maps = match &algebra.framings()[s] {
            Framing::Standard => None,
            Framing::Substituted(_) => Some(algebra.coordinate_maps(s)),
        };
        let column = |j: usize| -> Column<BaseElem> {
            let mono = algebra
                .monomial(&basis[j], algebra.base().one())
                .expect("basis monomial is in the window");
            let image = match &maps {
                None => algebra.nabla(&mono, s),
                Some(m) => algebra.transform_coord(&mono, s, m, CoordAction::Shift),
            };
            image_to_column(&image, &index)
        };
        #[cfg(feature = "parallel")]
        let cols: Vec<Column<BaseElem>> = (0..basis.len()).into_par_iter().map(column).collect();
        #[cfg(not(feature = "parallel"))]
        let cols: Vec<Column<BaseElem>> = (0..basis.len()).map(column).collect();
        ops.push(cols);
    }

    for s in 0..r {
        for t in (s + 1)..r {
            let st = compose_columns(&ops[s], &ops[t]);
            let ts = compose_columns(&ops[t], &ops[s]);
            if st != ts {
                return Err(DerhamError::NonCommuting { s, t });
            }
        }
    }

    Ok(KoszulComplex { algebra: algebra.clone(), basis, index, ops })
}

fn image_to_column(
    image: &AlgElem,
    index: &BTreeMap<Vec<i64>, usize>,
) -> Column<BaseElem> {
    image
        .terms()
        .map(|(exps, c)| (index[exps], c.clone()))
        .collect()
}

/// (a ∘ b): apply b, then a, as sparse column families.
fn compose_columns(
    a: &[Column<BaseElem>],
    b: &[Column<BaseElem>],
) -> Vec<Column<BaseElem>> {
    b.iter()
        .map(|col| {
            let mut out: Column<BaseElem> = BTreeMap::new();
            for (&k, c) in col {
                for (&i, ac) in &a[k] {
                    let prod = ac.mul(c);
                    if prod.is_zero() {
                        continue;
                    }
                    match out.remove(&i) {
                        None => {
                            out.insert(i, prod);
                        }
                        Some(old) => {
                            let sum = old.add(&prod);
                            if !sum.is_zero() {
                                out.insert(i, sum);
                            }
                        }
                    }
                }
            }
            out
        })
        .collect()
}

impl KoszulComplex {
    pub fn algebra(&self) -> &FramedAlgebra {
        &self.algebra
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

    pub fn op_column(&self, s: usize, j: usize) -> &Column<BaseElem> {
        &self.ops[s][j]
    }

    pub(crate) fn ops(&self) -> &[Vec<Column<BaseElem>>] {
        &self.ops
    }

    pub fn to_json(&self) -> serde_json::Value {
        let ops: Vec<serde_json::Value> = self
            .ops
            .iter()
            .map(|cols| {
                let triples: Vec<serde_json::Value> = cols
                    .iter()
                    .enumerate()
                    .flat_map(|(j, col)| {
                        col.iter()
                            .map(move |(&i, c)| serde_json::json!([i, j, c.to_json()]))
                    })
                    .collect();
                serde_json::Value::Array(triples)
            })
            .collect();
        serde_json::json!({
            "generators": self
                .algebra
                .gens()
                .iter()
                .map(|(n, l)| serde_json::json!({ "name": n, "laurent": l }))
                .collect::<Vec<_>>(),
            "window": self.algebra.window(),
            "basis_size": self.basis.len(),
            "operators": ops,
        })
    }
}

/// Subsets of {0, …, r−1} of size c in lexicographic order: the exterior
/// basis e_T of the Koszul complex in cohomological degree c.
pub(crate) fn subsets(r: usize, c: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(c);
    fn rec(r: usize, c: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == c {
            out.push(current.clone());
            return;
        }
        for s in start..r {
            current.push(s);
            rec(r, c, s + 1, current, out);
            current.pop();
        }
    }
    rec(r, c, 0, &mut current, &mut out);
    out
}

/// Koszul sign of inserting s into the ordered subset t: (−1)^{#{u ∈ t : u < s}}.
pub(crate) fn insertion_sign(t: &[usize], s: usize) -> i64 {
    let below = t.iter().filter(|&&u| u < s).count();
    if below % 2 == 0 {
        1
    } else {
        -1
    }
}

pub(crate) fn subset_with(t: &[usize], s: usize) -> Vec<usize> {
    let mut out = t.to_vec();
    out.push(s);
    out.sort_unstable();
    out
}
