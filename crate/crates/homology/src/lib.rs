//! Linear algebra over finite chain rings: Smith normal form with recorded
//! transformations, and invariant factors of cohomology of bounded complexes
//! of finite free modules.
//!
//! Over a chain ring every ideal is a power of the maximal ideal (π), so an
//! entry of least π-valuation divides every other entry. Smith reduction
//! therefore needs a single elimination pass per pivot and no iteration.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use base_arith::{ChainElem, ChainRing};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("d_next · d_prev ≠ 0: not a complex (nonzero at row {row}, col {col})")]
    NotAComplex { row: usize, col: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Dense matrix over a chain ring, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMatrix {
    ring: ChainRing,
    rows: usize,
    cols: usize,
    entries: Vec<ChainElem>,
}

impl ChainMatrix {
    pub fn zero(ring: &ChainRing, rows: usize, cols: usize) -> Self {
        ChainMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &ChainRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &ChainRing, rows: Vec<Vec<ChainElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map(|row| row.len()).unwrap_or(0);
        let mut m = Self::zero(ring, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, e) in row.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m
    }

    pub fn from_int_rows(ring: &ChainRing, rows: &[Vec<i64>]) -> Self {
        let converted = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&v| ring.from_bigint(&BigInt::from(v)))
                    .collect()
            })
            .collect();
        Self::from_rows(ring, converted)
    }

    pub fn ring(&self) -> &ChainRing {
        &self.ring
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ChainElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: ChainElem) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &ChainMatrix) -> ChainMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = ChainMatrix::zero(&self.ring, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<ChainElem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Apply to a column vector.
    pub fn apply(&self, x: &[ChainElem]) -> Vec<ChainElem> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for (j, xj) in x.iter().enumerate() {
                    acc = acc.add(&self.get(i, j).mul(xj));
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn scale_row(&mut self, i: usize, f: &ChainElem) {
        for j in 0..self.cols {
            let v = self.get(i, j).mul(f);
            self.set(i, j, v);
        }
    }

    fn scale_col(&mut self, j: usize, f: &ChainElem) {
        for i in 0..self.rows {
            let v = self.get(i, j).mul(f);
            self.set(i, j, v);
        }
    }

    /// row_i ← row_i − f·row_k
    fn row_op(&mut self, i: usize, k: usize, f: &ChainElem) {
        for j in 0..self.cols {
            let v = self.get(i, j).sub(&f.mul(self.get(k, j)));
            self.set(i, j, v);
        }
    }

    /// col_j ← col_j − f·col_k
    fn col_op(&mut self, j: usize, k: usize, f: &ChainElem) {
        for i in 0..self.rows {
            let v = self.get(i, j).sub(&f.mul(self.get(i, k)));
            self.set(i, j, v);
        }
    }

    /// col_j ← col_j + f·col_k
    fn col_op_add(&mut self, j: usize, k: usize, f: &ChainElem) {
        for i in 0..self.rows {
            let v = self.get(i, j).add(&f.mul(self.get(i, k)));
            self.set(i, j, v);
        }
    }

    /// row_i ← row_i + f·row_k
    fn row_op_add(&mut self, i: usize, k: usize, f: &ChainElem) {
        for j in 0..self.cols {
            let v = self.get(i, j).add(&f.mul(self.get(k, j)));
            self.set(i, j, v);
        }
    }

    /// Dims plus nonzero entry triples.
    pub fn to_json(&self) -> serde_json::Value {
        let mut triples = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    triples.push(serde_json::json!([i, j, e.to_json()]));
                }
            }
        }
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "entries": triples })
    }
}

impl fmt::Debug for ChainMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| format!("{}", self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Smith normal form U·M·V = D with recorded transforms and their inverses.
/// `pivots` lists the π-valuations of the diagonal of D, ascending, one per
/// diagonal slot (the nilpotency degree stands for zero).
pub struct SnfResult {
    pub u: ChainMatrix,
    pub u_inv: ChainMatrix,
    pub v: ChainMatrix,
    pub v_inv: ChainMatrix,
    pub d: ChainMatrix,
    pub pivots: Vec<u32>,
}

pub fn snf(m: &ChainMatrix) -> SnfResult {
    let ring = m.ring().clone();
    let e = ring.nilpotency();
    let (rows, cols) = (m.rows(), m.cols());
    let slots = rows.min(cols);

    let mut d = m.clone();
    let mut u = ChainMatrix::identity(&ring, rows);
    let mut u_inv = ChainMatrix::identity(&ring, rows);
    let mut v = ChainMatrix::identity(&ring, cols);
    let mut v_inv = ChainMatrix::identity(&ring, cols);
    let mut pivots: Vec<u32> = Vec::with_capacity(slots);

    for k in 0..slots {
        // Least-valuation pivot; the scan order makes ties lexicographic.
        let mut best: Option<(u32, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                let val = d.get(i, j).valuation();
                if val < e && best.map(|(bv, _, _)| val < bv).unwrap_or(true) {
                    best = Some((val, i, j));
                }
            }
        }
        let (a, pi, pj) = match best {
            None => break,
            Some(t) => t,
        };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        u_inv.swap_cols(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        v_inv.swap_rows(k, pj);

        // pivot = w · π^a with w a unit; normalize the pivot to exactly π^a.
        let pi_a = ring.pi_pow(a);
        let w = pi_a
            .solve_mul(d.get(k, k))
            .expect("pivot divisible by its own π-power");
        let w_inv = w.inv().expect("unit part inverts");
        d.scale_row(k, &w_inv);
        u.scale_row(k, &w_inv);
        u_inv.scale_col(k, &w);

        for i in (k + 1)..rows {
            if d.get(i, k).is_zero() {
                continue;
            }
            let f = pi_a
                .solve_mul(d.get(i, k))
                .expect("pivot has least valuation");
            d.row_op(i, k, &f);
            u.row_op(i, k, &f);
            u_inv.col_op_add(k, i, &f);
        }
        for j in (k + 1)..cols {
            if d.get(k, j).is_zero() {
                continue;
            }
            let f = pi_a
                .solve_mul(d.get(k, j))
                .expect("pivot has least valuation");
            d.col_op(j, k, &f);
            v.col_op(j, k, &f);
            v_inv.row_op_add(k, j, &f);
        }
        pivots.push(a);
    }
    pivots.resize(slots, e);

    SnfResult {
        u,
        u_inv,
        v,
        v_inv,
        d,
        pivots,
    }
}

/// Isomorphism type of a finitely presented module over a chain ring:
/// R^free ⊕ ⊕_j R/π^{c_j} with 0 < c_j < nilpotency, ascending.
#[derive(Clone, PartialEq, Eq)]
pub struct InvariantFactors {
    pub free_rank: usize,
    pub torsion: Vec<u32>,
    pub nilpotency: u32,
}

impl InvariantFactors {
    pub fn zero(nilpotency: u32) -> Self {
        InvariantFactors {
            free_rank: 0,
            torsion: vec![],
            nilpotency,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "free_rank": self.free_rank,
            "torsion": self.torsion,
            "nilpotency": self.nilpotency,
        })
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("R^{}", self.free_rank));
        }
        for c in &self.torsion {
            parts.push(format!("R/pi^{c}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Invariant factors of H = ker(d_next)/im(d_prev) for consecutive maps of a
/// complex of finite free modules: d_prev: R^a → R^n, d_next: R^n → R^b.
///
/// From U·d_next·V = D with diagonal valuations b_j, the kernel is generated
/// by g_j = π^{e−b_j}·(V e_j) over the columns with b_j > 0, each with
/// annihilator π^{b_j}. Images of d_prev expand in those generators by exact
/// division, giving a finite presentation whose Smith form reads off H.
pub fn complex_cohomology(
    d_prev: &ChainMatrix,
    d_next: &ChainMatrix,
) -> Result<InvariantFactors, HomologyError> {
    let ring = d_prev.ring().clone();
    let e = ring.nilpotency();
    let n = d_prev.rows();
    if d_next.cols() != n {
        return Err(HomologyError::DimensionMismatch(format!(
            "d_next has {} columns but the middle module has rank {n}",
            d_next.cols()
        )));
    }

    let composite = d_next.mul(d_prev);
    for i in 0..composite.rows() {
        for j in 0..composite.cols() {
            if !composite.get(i, j).is_zero() {
                return Err(HomologyError::NotAComplex { row: i, col: j });
            }
        }
    }

    let next_snf = snf(d_next);
    // Valuation b_j for every column of d_next (columns beyond the diagonal
    // are zero in D, hence valuation e).
    let b: Vec<u32> = (0..n)
        .map(|j| next_snf.pivots.get(j).copied().unwrap_or(e))
        .collect();
    let gens: Vec<usize> = (0..n).filter(|&j| b[j] > 0).collect();
    if gens.is_empty() {
        return Ok(InvariantFactors::zero(e));
    }

    // Relation matrix: annihilators π^{b_j}, then one column per image
    // generator expressed in the kernel basis.
    let m = gens.len();
    let mut rel = ChainMatrix::zero(&ring, m, m + d_prev.cols());
    for (r, &j) in gens.iter().enumerate() {
        rel.set(r, r, ring.pi_pow(b[j]));
    }
    for c in 0..d_prev.cols() {
        let w = next_snf.v_inv.apply(&d_prev.column(c));
        for (r, &j) in gens.iter().enumerate() {
            let s = ring
                .pi_pow(e - b[j])
                .solve_mul(&w[j])
                .expect("image lies in the kernel, coordinates divide");
            rel.set(r, m + c, s);
        }
        // Unit-pivot coordinates must vanish outright for a genuine complex.
        for (j, bj) in b.iter().enumerate() {
            if *bj == 0 {
                debug_assert!(w[j].is_zero(), "image escapes the kernel");
            }
        }
    }

    let rel_snf = snf(&rel);
    let mut free_rank = 0usize;
    let mut torsion = Vec::new();
    for &c in &rel_snf.pivots {
        if c == e {
            free_rank += 1;
        } else if c > 0 {
            torsion.push(c);
        }
    }
    torsion.sort_unstable();
    Ok(InvariantFactors {
        free_rank,
        torsion,
        nilpotency: e,
    })
}

/// H⁰ of the two-term complex 0 → R^n --M--> R^m.
pub fn kernel_invariants(m: &ChainMatrix) -> InvariantFactors {
    let empty = ChainMatrix::zero(m.ring(), m.cols(), 0);
    complex_cohomology(&empty, m).expect("two-term complex")
}

/// H¹ of the two-term complex R^n --M--> R^m → 0.
pub fn cokernel_invariants(m: &ChainMatrix) -> InvariantFactors {
    let zero_out = ChainMatrix::zero(m.ring(), 0, m.rows());
    complex_cohomology(m, &zero_out).expect("two-term complex")
}
