//! Finite-dimensional Hopf algebras presented by generators and PBW-type
//! rewriting rules, with coalgebra data given on generators.

mod axioms;
mod element;
mod expr;
mod presentation;
mod primitives;
mod sparse;

pub use axioms::{AxiomCheck, AxiomReport};
pub use element::{HopfElement, TensorElement};
pub use expr::{parse_expr, parse_tensor, Expr, Scope, TensorExpr, Word};
pub use presentation::{AlgebraBuilder, DefinedSymbol, GeneratorSpec, PresentedHopfAlgebra, SwapRule};
pub use sparse::{outer, Mono, SparseMap, Tensor2, Tensor3, Vector};

use crate::cyclotomic::CycloError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HopfError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid presentation: {0}")]
    Invalid(String),
    #[error("rewriting does not terminate: {0}")]
    NonTermination(String),
    #[error("elements belong to different algebras")]
    OwnerMismatch,
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}
