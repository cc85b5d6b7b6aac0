use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::CycloNum;

use super::presentation::PresentedHopfAlgebra;
use super::sparse::{Tensor2, Vector};
use super::HopfError;

/// An element tied to the algebra it lives in.
#[derive(Clone)]
pub struct HopfElement {
    alg: Arc<PresentedHopfAlgebra>,
    v: Vector,
}

/// An element of `A ⊗ A`.
#[derive(Clone)]
pub struct TensorElement {
    alg: Arc<PresentedHopfAlgebra>,
    t: Tensor2,
}

impl HopfElement {
    pub fn new(alg: &Arc<PresentedHopfAlgebra>, v: Vector) -> Self {
        HopfElement { alg: alg.clone(), v }
    }

    pub fn one(alg: &Arc<PresentedHopfAlgebra>) -> Self {
        Self::new(alg, alg.one())
    }

    pub fn generator(alg: &Arc<PresentedHopfAlgebra>, name: &str) -> Result<Self, HopfError> {
        let g = alg
            .generator_index(name)
            .ok_or_else(|| HopfError::Parse(format!("unknown generator {name:?}")))?;
        Ok(Self::new(alg, alg.generator_monomial(g)))
    }

    pub fn parse(alg: &Arc<PresentedHopfAlgebra>, s: &str) -> Result<Self, HopfError> {
        Ok(Self::new(alg, alg.parse_element(s, &[])?))
    }

    pub fn algebra(&self) -> &Arc<PresentedHopfAlgebra> {
        &self.alg
    }

    pub fn vector(&self) -> &Vector {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    fn same(&self, other: &Self) -> Result<(), HopfError> {
        if self.alg.id() == other.alg.id() {
            Ok(())
        } else {
            Err(HopfError::OwnerMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, HopfError> {
        self.same(other)?;
        Ok(Self::new(&self.alg, self.v.add(&other.v)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, HopfError> {
        self.same(other)?;
        Ok(Self::new(&self.alg, self.v.sub(&other.v)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, HopfError> {
        self.same(other)?;
        Ok(Self::new(&self.alg, self.alg.mul(&self.v, &other.v)))
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        Self::new(&self.alg, self.v.scale(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(&self.alg, self.alg.pow(&self.v, e))
    }

    pub fn counit(&self) -> CycloNum {
        self.alg.counit(&self.v)
    }

    pub fn antipode(&self) -> Self {
        Self::new(&self.alg, self.alg.antipode(&self.v))
    }

    pub fn coproduct(&self) -> TensorElement {
        TensorElement { alg: self.alg.clone(), t: self.alg.delta(&self.v) }
    }
}

impl TensorElement {
    pub fn tensor(&self) -> &Tensor2 {
        &self.t
    }

    pub fn algebra(&self) -> &Arc<PresentedHopfAlgebra> {
        &self.alg
    }

    /// `a ⊗ b` for elements of the same algebra.
    pub fn from_pair(a: &HopfElement, b: &HopfElement) -> Result<Self, HopfError> {
        a.same(b)?;
        let mut t = Tensor2::new();
        super::sparse::outer(&a.v, &b.v, &CycloNum::one(a.alg.conductor()), &mut t);
        Ok(TensorElement { alg: a.alg.clone(), t })
    }
}

impl PartialEq for HopfElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.id() == other.alg.id() && self.v == other.v
    }
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.alg.id() == other.alg.id() && self.t == other.t
    }
}

impl fmt::Display for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alg.format_vector(&self.v))
    }
}

impl fmt::Debug for HopfElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HopfElement({}: {})", self.alg.name(), self)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alg.format_tensor(&self.t))
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TensorElement({}: {})", self.alg.name(), self)
    }
}
