//! Exact computations with presented finite-dimensional Hopf algebras over
//! cyclotomic fields: Drinfeld doubles, dual pairings, and module-algebra
//! actions on `k[u]/(u^n - β)`.

pub mod cyclotomic;
pub mod linalg;
pub mod hopf;
pub mod catalog;
pub mod pairing;
pub mod double;
pub mod modalg;
pub mod io;
pub mod cli;
