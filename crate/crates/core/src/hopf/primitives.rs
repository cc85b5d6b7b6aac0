use std::collections::BTreeMap;

use crate::cyclotomic::CycloNum;
use crate::linalg::SparseEliminator;

use super::presentation::PresentedHopfAlgebra;
use super::sparse::{Mono, Tensor2, Vector};
use super::HopfError;

impl PresentedHopfAlgebra {
    pub fn is_grouplike(&self, m: Mono) -> bool {
        let d = self.delta_mono(m);
        d.len() == 1 && d.get(&(m, m)).is_some_and(|c| c.is_one())
    }

    /// Basis monomials `m` with `Δ(m) = m ⊗ m`.
    pub fn grouplikes(&self) -> Vec<Mono> {
        (0..self.dimension() as Mono).filter(|&m| self.is_grouplike(m)).collect()
    }

    /// Basis of `{Φ : Δ(Φ) = g ⊗ Φ + Φ ⊗ h}` for grouplike monomials `g`, `h`.
    pub fn skew_primitive_space(&self, g: Mono, h: Mono) -> Result<Vec<Vector>, HopfError> {
        for m in [g, h] {
            if (m as usize) >= self.dimension() || !self.is_grouplike(m) {
                return Err(HopfError::Invalid(format!("monomial {m} is not grouplike")));
            }
        }
        let one = CycloNum::one(self.conductor());
        let mut elim: SparseEliminator<(Mono, Mono)> = SparseEliminator::with_conductor(self.conductor());
        for m in 0..self.dimension() as Mono {
            let mut col: Tensor2 = self.delta_mono(m).clone();
            col.add_term_owned((g, m), -&one);
            col.add_term_owned((m, h), -&one);
            elim.push(col.into_map());
        }
        Ok(elim
            .kernel()
            .iter()
            .map(|rel: &BTreeMap<usize, CycloNum>| rel.iter().map(|(i, c)| (*i as Mono, c.clone())).collect())
            .collect())
    }
}
