//! Sparse linear combinations keyed by basis monomials or tuples of them.

use std::collections::BTreeMap;

use crate::cyclotomic::CycloNum;

/// Index of a normal monomial in the mixed-radix enumeration of a presentation.
pub type Mono = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseMap<K: Ord> {
    terms: BTreeMap<K, CycloNum>,
}

/// Element of an algebra, as coefficients on normal monomials.
pub type Vector = SparseMap<Mono>;
/// Element of `A ⊗ A`.
pub type Tensor2 = SparseMap<(Mono, Mono)>;
/// Element of `A ⊗ A ⊗ A`.
pub type Tensor3 = SparseMap<(Mono, Mono, Mono)>;

impl<K: Ord> Default for SparseMap<K> {
    fn default() -> Self {
        SparseMap { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Copy> SparseMap<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(k: K, c: CycloNum) -> Self {
        let mut s = Self::new();
        s.add_term(k, &c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: &K) -> Option<&CycloNum> {
        self.terms.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &CycloNum)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn map(&self) -> &BTreeMap<K, CycloNum> {
        &self.terms
    }

    pub fn into_map(self) -> BTreeMap<K, CycloNum> {
        self.terms
    }

    pub fn add_term(&mut self, k: K, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn add_term_owned(&mut self, k: K, c: CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(x) => {
                *x += &c;
                if x.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    /// `self += f * other`.
    pub fn axpy(&mut self, f: &CycloNum, other: &Self) {
        if f.is_zero() {
            return;
        }
        let unit = f.is_one();
        for (k, c) in &other.terms {
            if unit {
                self.add_term(*k, c);
            } else {
                self.add_term_owned(*k, f * c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term_owned(*k, -c);
        }
        out
    }

    pub fn scale(&self, f: &CycloNum) -> Self {
        if f.is_zero() {
            return Self::new();
        }
        SparseMap { terms: self.terms.iter().map(|(k, c)| (*k, f * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        SparseMap { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl<K: Ord + Copy> FromIterator<(K, CycloNum)> for SparseMap<K> {
    fn from_iter<I: IntoIterator<Item = (K, CycloNum)>>(iter: I) -> Self {
        let mut s = Self::new();
        for (k, c) in iter {
            s.add_term_owned(k, c);
        }
        s
    }
}

impl<'a, K: Ord> IntoIterator for &'a SparseMap<K> {
    type Item = (&'a K, &'a CycloNum);
    type IntoIter = std::collections::btree_map::Iter<'a, K, CycloNum>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

/// `Σ a_i ⊗ b_j` for plain vectors.
pub fn outer(a: &Vector, b: &Vector, f: &CycloNum, into: &mut Tensor2) {
    for (x, cx) in a {
        let fx = f * cx;
        for (y, cy) in b {
            into.add_term_owned((*x, *y), &fx * cy);
        }
    }
}
