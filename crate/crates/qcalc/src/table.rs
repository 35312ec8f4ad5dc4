use std::sync::Arc;

use base_arith::{varset, IntPoly};
use num_bigint::BigInt;
use num_traits::One;

use crate::error::QcalcError;

/// Variable set for polynomials in q.
pub fn q_vars() -> Arc<Vec<String>> {
    varset(vec!["q"])
}

/// Variable set for polynomials in t, where t plays the role of q^(1/p).
pub fn t_vars() -> Arc<Vec<String>> {
    varset(vec!["t"])
}

fn var_poly(vars: &Arc<Vec<String>>) -> IntPoly {
    IntPoly::var(vars.clone(), 0)
}

/// The q-integer [n]_q = (q^n - 1)/(q - 1), produced by exact division in the
/// given one-variable polynomial ring.
pub fn q_int_in(vars: &Arc<Vec<String>>, n: u64) -> IntPoly {
    if n == 0 {
        return IntPoly::zero(vars.clone());
    }
    let v = var_poly(vars);
    let numerator = v.pow(n as u32).sub(&IntPoly::one(vars.clone()));
    let denominator = v.sub(&IntPoly::one(vars.clone()));
    numerator
        .exact_div(&denominator)
        .expect("q^n - 1 is divisible by q - 1")
}

/// [n]_q as a polynomial in the variable q.
pub fn q_int(n: u64) -> IntPoly {
    q_int_in(&q_vars(), n)
}

/// [n]_q! = prod_{i=1..n} [i]_q in the variable q.
pub fn q_factorial(n: u64) -> IntPoly {
    let vars = q_vars();
    let mut acc = IntPoly::one(vars.clone());
    for i in 1..=n {
        acc = acc.mul(&q_int_in(&vars, i));
    }
    acc
}

/// The Gaussian binomial [a choose b]_q = [a]_q! / ([b]_q! [a-b]_q!).
/// Divisibility is established by the exact division itself; a nonzero
/// remainder is reported, never ignored.
pub fn q_binomial(a: u64, b: u64) -> Result<IntPoly, QcalcError> {
    assert!(b <= a, "q_binomial requires b <= a, got ({a}, {b})");
    let denominator = q_factorial(b).mul(&q_factorial(a - b));
    q_factorial(a)
        .exact_div(&denominator)
        .map_err(|rem| QcalcError::NotDivisible {
            context: "q_binomial",
            remainder: rem.to_string(),
        })
}

/// The Frobenius lift on Z[q]: q |-> q^p.
pub fn frobenius_q(f: &IntPoly, p: u64) -> IntPoly {
    let vars = f.vars().clone();
    let image = IntPoly::monomial(vars.clone(), vec![p as u32], BigInt::one());
    f.subst(vars, &[image])
}

/// Embed Z[q] into Z[t] along q = t^p.
pub fn embed_root(f: &IntPoly, p: u64) -> IntPoly {
    assert_eq!(f.vars().len(), 1, "embed_root is univariate");
    let tv = t_vars();
    let image = IntPoly::monomial(tv.clone(), vec![p as u32], BigInt::one());
    f.subst(tv, &[image])
}

/// Write-once cache of q-factorials for a fixed prime p and bound, together
/// with the matching factorials in the root variable t = q^(1/p).  The table
/// is immutable after construction, so sharing it across threads is safe.
#[derive(Debug, Clone)]
pub struct QFactorialTable {
    p: u64,
    entries: Vec<IntPoly>,
    root_entries: Vec<IntPoly>,
}

impl QFactorialTable {
    pub fn new(p: u64, bound: u64) -> Self {
        assert!(p >= 2, "p must be at least 2");
        let qv = q_vars();
        let tv = t_vars();
        let mut entries = Vec::with_capacity(bound as usize + 1);
        let mut root_entries = Vec::with_capacity(bound as usize + 1);
        entries.push(IntPoly::one(qv.clone()));
        root_entries.push(IntPoly::one(tv.clone()));
        for n in 1..=bound {
            let prev = entries.last().expect("nonempty");
            entries.push(prev.mul(&q_int_in(&qv, n)));
            let prev_root = root_entries.last().expect("nonempty");
            root_entries.push(prev_root.mul(&q_int_in(&tv, n)));
        }
        QFactorialTable { p, entries, root_entries }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn bound(&self) -> u64 {
        self.entries.len() as u64 - 1
    }

    /// [n]_q! in the variable q.
    pub fn factorial(&self, n: u64) -> &IntPoly {
        self.entries
            .get(n as usize)
            .unwrap_or_else(|| panic!("factorial({n}) exceeds table bound {}", self.bound()))
    }

    /// [n]_{q^(1/p)}! expressed in the variable t with q = t^p.
    pub fn root_factorial(&self, n: u64) -> &IntPoly {
        self.root_entries
            .get(n as usize)
            .unwrap_or_else(|| panic!("root_factorial({n}) exceeds table bound {}", self.bound()))
    }

    /// [a choose b]_q by the defining exact division, using the cached
    /// factorials.  Agrees with the free function `q_binomial`.
    pub fn binomial(&self, a: u64, b: u64) -> Result<IntPoly, QcalcError> {
        assert!(b <= a, "binomial requires b <= a, got ({a}, {b})");
        let denominator = self.factorial(b).mul(self.factorial(a - b));
        self.factorial(a)
            .exact_div(&denominator)
            .map_err(|rem| QcalcError::NotDivisible {
                context: "QFactorialTable::binomial",
                remainder: rem.to_string(),
            })
    }

    /// [n]_q in the variable q.
    pub fn q_int(&self, n: u64) -> IntPoly {
        q_int(n)
    }

    /// [n]_{q^(1/p)} in the variable t.
    pub fn root_q_int(&self, n: u64) -> IntPoly {
        q_int_in(&t_vars(), n)
    }
}
