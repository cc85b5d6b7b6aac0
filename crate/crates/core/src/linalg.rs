//! Exact linear algebra over a cyclotomic field.

use std::collections::BTreeMap;

use crate::cyclotomic::{CycloError, CycloNum};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    conductor: u32,
    data: Vec<CycloNum>,
}

impl Matrix {
    pub fn zeros(conductor: u32, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, conductor, data: vec![CycloNum::zero(conductor); rows * cols] }
    }

    pub fn identity(conductor: u32, n: usize) -> Self {
        let mut m = Self::zeros(conductor, n, n);
        for i in 0..n {
            m[(i, i)] = CycloNum::one(conductor);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn row(&self, r: usize) -> &[CycloNum] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.conductor, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    /// Row echelon form in place; returns pivot columns and the determinant
    /// factor picked up along the way.
    fn eliminate(&mut self) -> (Vec<usize>, CycloNum) {
        let mut pivots = Vec::new();
        let mut det = CycloNum::one(self.conductor);
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
                det = -det;
            }
            let pv = self[(r, c)].clone();
            det = &det * &pv;
            let inv = pv.inverse().expect("nonzero pivot");
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if !self[(r, j)].is_zero() {
                        let d = &f * &self[(r, j)];
                        self[(i, j)] -= &d;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, det)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0.len()
    }

    pub fn determinant(&self) -> Result<CycloNum, CycloError> {
        if self.rows != self.cols {
            return Err(CycloError::Domain("determinant of a non-square matrix".into()));
        }
        let (pivots, det) = self.clone().eliminate();
        if pivots.len() < self.rows {
            Ok(CycloNum::zero(self.conductor))
        } else {
            Ok(det)
        }
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.conductor, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = CycloNum::one(self.conductor);
        }
        let (pivots, _) = aug.eliminate();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = Matrix::zeros(self.conductor, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<CycloNum>> {
        let mut m = self.clone();
        let (pivots, _) = m.eliminate();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![CycloNum::zero(self.conductor); self.cols];
                v[f] = CycloNum::one(self.conductor);
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m[(r, f)];
                }
                v
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = CycloNum;
    fn index(&self, (r, c): (usize, usize)) -> &CycloNum {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut CycloNum {
        &mut self.data[r * self.cols + c]
    }
}

/// Incremental elimination over sparse vectors indexed by `K`.
///
/// Vectors are fed one at a time; each is reduced against the pivots seen so
/// far while tracking which input combination produced it. A vector that
/// reduces to zero yields a kernel relation among the inputs.
pub struct SparseEliminator<K: Ord + Clone> {
    pivots: BTreeMap<K, (BTreeMap<K, CycloNum>, BTreeMap<usize, CycloNum>)>,
    count: usize,
    kernel: Vec<BTreeMap<usize, CycloNum>>,
    conductor: Option<u32>,
}

impl<K: Ord + Clone> Default for SparseEliminator<K> {
    fn default() -> Self {
        SparseEliminator { pivots: BTreeMap::new(), count: 0, kernel: Vec::new(), conductor: None }
    }
}

fn axpy<K: Ord + Clone>(dst: &mut BTreeMap<K, CycloNum>, f: &CycloNum, src: &BTreeMap<K, CycloNum>) {
    for (k, v) in src {
        let d = f * v;
        match dst.get_mut(k) {
            Some(x) => {
                *x -= &d;
                if x.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                dst.insert(k.clone(), -d);
            }
        }
    }
}

impl<K: Ord + Clone> SparseEliminator<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fixes the field used for kernel coefficients, which matters when a
    /// zero vector is pushed before any nonzero one.
    pub fn with_conductor(conductor: u32) -> Self {
        SparseEliminator { conductor: Some(conductor), ..Self::default() }
    }

    /// Adds the next input vector; returns true if it was independent.
    pub fn push(&mut self, mut v: BTreeMap<K, CycloNum>) -> bool {
        v.retain(|_, c| !c.is_zero());
        let conductor = v.values().next().map(|c| c.conductor()).or(self.conductor);
        if self.conductor.is_none() {
            self.conductor = conductor;
        }
        let idx = self.count;
        self.count += 1;
        let mut combo: BTreeMap<usize, CycloNum> = BTreeMap::new();
        if let Some(m) = conductor {
            combo.insert(idx, CycloNum::one(m));
        }
        let mut cursor: Option<K> = None;
        loop {
            let next = match &cursor {
                None => v.keys().find(|k| self.pivots.contains_key(*k)).cloned(),
                Some(c) => v
                    .range((std::ops::Bound::Excluded(c.clone()), std::ops::Bound::Unbounded))
                    .map(|(k, _)| k)
                    .find(|k| self.pivots.contains_key(*k))
                    .cloned(),
            };
            let Some(k) = next else { break };
            let f = v[&k].clone();
            let (pv, pc) = &self.pivots[&k];
            axpy(&mut v, &f, pv);
            axpy(&mut combo, &f, pc);
            cursor = Some(k);
        }
        match v.keys().next().cloned() {
            None => {
                if combo.is_empty() {
                    // the zero vector: its own index is a kernel relation
                    self.kernel.push(BTreeMap::from([(idx, CycloNum::one(self.conductor.unwrap_or(1)))]));
                } else {
                    self.kernel.push(combo);
                }
                false
            }
            Some(lead) => {
                let inv = v[&lead].inverse().expect("nonzero lead");
                for c in v.values_mut() {
                    *c = &*c * &inv;
                }
                for c in combo.values_mut() {
                    *c = &*c * &inv;
                }
                self.pivots.insert(lead, (v, combo));
                true
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Kernel relations found so far, as sparse coefficient maps over input indices.
    pub fn kernel(&self) -> &[BTreeMap<usize, CycloNum>] {
        &self.kernel
    }
}
