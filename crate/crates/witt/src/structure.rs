//! Universal structure polynomials for p-typical Witt vectors, solved once
//! per (p, m) from the ghost equations and cached process-wide.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, Mutex};

use num_bigint::BigInt;

use base_arith::{varset, IntPoly};

/// Everything universal about W_m at the prime p: addition, multiplication,
/// negation, Frobenius, and δ components as integer polynomials, plus the
/// ghost polynomials they were solved from.
pub struct StructurePolys {
    pub p: u64,
    pub m: usize,
    /// 2m variables x0..x_{m−1}, y0..y_{m−1}.
    pub vars_xy: std::sync::Arc<Vec<String>>,
    /// m variables x0..x_{m−1}.
    pub vars_x: std::sync::Arc<Vec<String>>,
    /// S_i ∈ ℤ[x,y], i < m.
    pub sum: Vec<IntPoly>,
    /// P_i ∈ ℤ[x,y], i < m.
    pub prod: Vec<IntPoly>,
    /// Negation components, i < m.
    pub neg: Vec<IntPoly>,
    /// Frobenius components, i < m−1 (F drops one length).
    pub frob: Vec<IntPoly>,
    /// δ components, i < m−1: ghost of δ is (gh_{i+1} − gh_i^p)/p.
    pub delta: Vec<IntPoly>,
    /// Ghost polynomials gh_i in the x variables, i < m.
    pub ghost_x: Vec<IntPoly>,
}

fn ghost(
    vars: &std::sync::Arc<Vec<String>>,
    offset: usize,
    p: u64,
    i: usize,
) -> IntPoly {
    let mut acc = IntPoly::zero(vars.clone());
    for j in 0..=i {
        let coeff = BigInt::from(p).pow(j as u32);
        let power = (p as u32).pow((i - j) as u32);
        let term = IntPoly::var(vars.clone(), offset + j)
            .pow(power)
            .mul_coeff(&coeff);
        acc = acc.add(&term);
    }
    acc
}

/// Solve comps_i from gh_i(comps) = target_i by the triangular recursion
/// comps_i = (target_i − Σ_{j<i} p^j comps_j^{p^{i−j}})/p^i. Every division
/// must be exact; a remainder would falsify integrality of the Witt laws.
fn solve_ghost_system(p: u64, targets: &[IntPoly]) -> Vec<IntPoly> {
    let mut comps: Vec<IntPoly> = Vec::with_capacity(targets.len());
    for (i, target) in targets.iter().enumerate() {
        let mut rem = target.clone();
        for (j, prev) in comps.iter().enumerate() {
            let coeff = BigInt::from(p).pow(j as u32);
            let power = (p as u32).pow((i - j) as u32);
            rem = rem.sub(&prev.pow(power).mul_coeff(&coeff));
        }
        let divisor = BigInt::from(p).pow(i as u32);
        let comp = rem
            .div_int_exact(&divisor)
            .unwrap_or_else(|r| panic!("ghost division left remainder {r}"));
        comps.push(comp);
    }
    comps
}

impl StructurePolys {
    fn compute(p: u64, m: usize) -> StructurePolys {
        assert!(m >= 1, "Witt length must be positive");
        let names_xy: Vec<String> = (0..m)
            .map(|i| format!("x{i}"))
            .chain((0..m).map(|i| format!("y{i}")))
            .collect();
        let vars_xy = varset(names_xy);
        let vars_x = varset((0..m).map(|i| format!("x{i}")).collect::<Vec<_>>());

        let gh_x: Vec<IntPoly> = (0..m).map(|i| ghost(&vars_xy, 0, p, i)).collect();
        let gh_y: Vec<IntPoly> = (0..m).map(|i| ghost(&vars_xy, m, p, i)).collect();
        let gh_only_x: Vec<IntPoly> = (0..m).map(|i| ghost(&vars_x, 0, p, i)).collect();

        let sum_targets: Vec<IntPoly> =
            gh_x.iter().zip(&gh_y).map(|(a, b)| a.add(b)).collect();
        let prod_targets: Vec<IntPoly> =
            gh_x.iter().zip(&gh_y).map(|(a, b)| a.mul(b)).collect();
        let neg_targets: Vec<IntPoly> = gh_only_x.iter().map(|a| a.neg()).collect();
        let frob_targets: Vec<IntPoly> = (0..m.saturating_sub(1))
            .map(|i| gh_only_x[i + 1].clone())
            .collect();
        let delta_targets: Vec<IntPoly> = (0..m.saturating_sub(1))
            .map(|i| {
                gh_only_x[i + 1]
                    .sub(&gh_only_x[i].pow(p as u32))
                    .div_int_exact(&BigInt::from(p))
                    .unwrap_or_else(|r| panic!("δ ghost not divisible by p: {r}"))
            })
            .collect();

        StructurePolys {
            p,
            m,
            vars_xy,
            vars_x,
            sum: solve_ghost_system(p, &sum_targets),
            prod: solve_ghost_system(p, &prod_targets),
            neg: solve_ghost_system(p, &neg_targets),
            frob: solve_ghost_system(p, &frob_targets),
            delta: solve_ghost_system(p, &delta_targets),
            ghost_x: gh_only_x,
        }
    }
}

static CACHE: LazyLock<Mutex<HashMap<(u64, usize), Arc<StructurePolys>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

/// Fetch (or compute once) the structure polynomials for (p, m). Concurrent
/// first calls may both compute; the first insert wins and the values are
/// identical by construction.
pub fn structure_polys(p: u64, m: usize) -> Arc<StructurePolys> {
    if let Some(hit) = CACHE.lock().unwrap().get(&(p, m)) {
        return hit.clone();
    }
    let computed = Arc::new(StructurePolys::compute(p, m));
    CACHE
        .lock()
        .unwrap()
        .entry((p, m))
        .or_insert(computed)
        .clone()
}
