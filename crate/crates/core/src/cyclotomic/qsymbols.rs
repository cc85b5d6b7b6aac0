//! q-integers, q-factorials, q-binomials and their balanced variants.

use super::{CycloError, CycloNum};

/// `(n)_q = 1 + q + … + q^{n-1}`.
pub fn q_int(n: u32, q: &CycloNum) -> CycloNum {
    let mut acc = CycloNum::zero(q.conductor());
    let mut p = CycloNum::one(q.conductor());
    for _ in 0..n {
        acc += &p;
        p = &p * q;
    }
    acc
}

/// `(n)_q! = (1)_q (2)_q ⋯ (n)_q`, with `(0)_q! = 1`.
pub fn q_factorial(n: u32, q: &CycloNum) -> CycloNum {
    (1..=n).fold(CycloNum::one(q.conductor()), |acc, k| &acc * &q_int(k, q))
}

/// Gaussian binomial, built by the Pascal recurrence
/// `binom(n, m) = binom(n-1, m-1) + q^m binom(n-1, m)` so that it stays
/// defined when `(k)_q` vanishes.
pub fn q_binom(n: u32, m: u32, q: &CycloNum) -> CycloNum {
    if m > n {
        return CycloNum::zero(q.conductor());
    }
    QSymbolTable::new(q, n).binom(n, m).clone()
}

fn require_generic(q: &CycloNum) -> Result<CycloNum, CycloError> {
    let q2 = q * q;
    if q2.is_one() {
        return Err(CycloError::Domain("balanced q-symbols need q^2 != 1".into()));
    }
    Ok(q2)
}

/// `[n]_q = (q^n - q^{-n}) / (q - q^{-1}) = q^{-(n-1)} (n)_{q^2}`.
pub fn bracket_int(n: u32, q: &CycloNum) -> Result<CycloNum, CycloError> {
    let q2 = require_generic(q)?;
    Ok(&q.pow(-(n as i64 - 1))? * &q_int(n, &q2))
}

/// `[n]_q! = q^{-n(n-1)/2} (n)_{q^2}!`.
pub fn bracket_factorial(n: u32, q: &CycloNum) -> Result<CycloNum, CycloError> {
    let q2 = require_generic(q)?;
    let e = n as i64 * (n as i64 - 1) / 2;
    Ok(&q.pow(-e)? * &q_factorial(n, &q2))
}

/// Precomputed q-symbols up to a bound.
#[derive(Debug, Clone)]
pub struct QSymbolTable {
    q: CycloNum,
    ints: Vec<CycloNum>,
    factorials: Vec<CycloNum>,
    binoms: Vec<Vec<CycloNum>>,
}

impl QSymbolTable {
    pub fn new(q: &CycloNum, nmax: u32) -> Self {
        let m = q.conductor();
        let n = nmax as usize;
        let mut ints = Vec::with_capacity(n + 1);
        let mut factorials = Vec::with_capacity(n + 1);
        let mut qpow = vec![CycloNum::one(m)];
        for k in 1..=n {
            let next = &qpow[k - 1] * q;
            qpow.push(next);
        }
        let mut acc = CycloNum::zero(m);
        for k in 0..=n {
            ints.push(acc.clone());
            acc += &qpow[k];
        }
        let mut f = CycloNum::one(m);
        factorials.push(f.clone());
        for k in 1..=n {
            f = &f * &ints[k];
            factorials.push(f.clone());
        }
        let mut binoms: Vec<Vec<CycloNum>> = Vec::with_capacity(n + 1);
        for r in 0..=n {
            let mut row = Vec::with_capacity(r + 1);
            for c in 0..=r {
                if c == 0 || c == r {
                    row.push(CycloNum::one(m));
                } else {
                    let prev: &Vec<CycloNum> = &binoms[r - 1];
                    row.push(&prev[c - 1] + &(&qpow[c] * &prev[c]));
                }
            }
            binoms.push(row);
        }
        QSymbolTable { q: q.clone(), ints, factorials, binoms }
    }

    pub fn q(&self) -> &CycloNum {
        &self.q
    }

    pub fn int(&self, n: u32) -> &CycloNum {
        &self.ints[n as usize]
    }

    pub fn factorial(&self, n: u32) -> &CycloNum {
        &self.factorials[n as usize]
    }

    /// Panics if `m > n` or `n` exceeds the table bound.
    pub fn binom(&self, n: u32, m: u32) -> &CycloNum {
        &self.binoms[n as usize][m as usize]
    }
}
