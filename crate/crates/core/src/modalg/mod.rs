//! Module-algebra actions on `A = k[u]/(u^n − β)`: verification,
//! inner-faithfulness, classification, and extension to the double.

mod classify;
mod engine;
mod poly;
mod solve;

use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycloNum;
use crate::hopf::{AxiomCheck, HopfElement, HopfError, Mono, PresentedHopfAlgebra, Vector};
use crate::linalg::Matrix;

pub use classify::{
    classify_actions, classify_with_grading, extend_to_double, ActionFamily, Certificate, ClassificationReport,
    Constraint, GeneratorImage, GradingInfo, UnknownStatus,
};
pub use poly::{Poly, PolyTerm};

use engine::{Column, SymbolData};

const MAX_REPORTED: usize = 8;

/// `k[u]/(u^n − β)` with basis `1, u, …, u^{n−1}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CyclicAlgebra {
    n: u32,
    beta: CycloNum,
}

impl CyclicAlgebra {
    pub fn new(n: u32, beta: CycloNum) -> Result<Self, HopfError> {
        if n == 0 {
            return Err(HopfError::Invalid("k[u]/(u^n − β) needs n ≥ 1".into()));
        }
        if beta.is_zero() {
            return Err(HopfError::Invalid("β must be nonzero".into()));
        }
        Ok(CyclicAlgebra { n, beta })
    }

    /// `k[u]/(u^n − 1)`.
    pub fn standard(n: u32, conductor: u32) -> Self {
        CyclicAlgebra { n, beta: CycloNum::one(conductor) }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn beta(&self) -> &CycloNum {
        &self.beta
    }

    /// `u^p · u^q = factor · u^e`.
    pub fn basis_product(&self, p: u32, q: u32) -> (u32, CycloNum) {
        let e = p + q;
        if e >= self.n {
            (e - self.n, self.beta.clone())
        } else {
            (e, CycloNum::one(self.beta.conductor()))
        }
    }

    /// Product of two elements in coordinates.
    pub fn mul(&self, a: &[CycloNum], b: &[CycloNum]) -> Vec<CycloNum> {
        let mut out = vec![CycloNum::zero(self.beta.conductor()); self.n as usize];
        for (p, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (e, f) = self.basis_product(p as u32, q as u32);
                out[e as usize] += &(&(x * y) * &f);
            }
        }
        out
    }
}

/// An action of a presented algebra on `k[u]/(u^n − β)` given by one
/// matrix per generator; column `p` is the image of `u^p`.
#[derive(Clone)]
pub struct ModuleAlgebraAction {
    algebra: Arc<PresentedHopfAlgebra>,
    target: CyclicAlgebra,
    matrices: Vec<Matrix>,
}

impl std::fmt::Debug for ModuleAlgebraAction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleAlgebraAction")
            .field("algebra", &self.algebra.name())
            .field("n", &self.target.n)
            .field("images", &self.describe())
            .finish()
    }
}

impl ModuleAlgebraAction {
    pub fn new(algebra: Arc<PresentedHopfAlgebra>, target: CyclicAlgebra, matrices: Vec<Matrix>) -> Result<Self, HopfError> {
        let n = target.n as usize;
        if matrices.len() != algebra.num_generators() {
            return Err(HopfError::Invalid(format!(
                "expected {} matrices, got {}",
                algebra.num_generators(),
                matrices.len()
            )));
        }
        if matrices.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(HopfError::Invalid(format!("action matrices must be {n}×{n}")));
        }
        if matrices.iter().any(|m| m.conductor() != algebra.conductor()) || target.beta.conductor() != algebra.conductor() {
            return Err(HopfError::Invalid("action and algebra live over different fields".into()));
        }
        Ok(ModuleAlgebraAction { algebra, target, matrices })
    }

    /// The action with `s · u = c · u^e` for each listed symbol, extended to
    /// all `u^p` through the coproduct. Defined symbols occurring in a
    /// symbolic coproduct need images too.
    pub fn from_monomial_images(
        algebra: Arc<PresentedHopfAlgebra>,
        target: CyclicAlgebra,
        images: &[(&str, u32, CycloNum)],
    ) -> Result<Self, HopfError> {
        let names = algebra.symbol_names();
        let mut data: Vec<Option<SymbolData>> = vec![None; names.len()];
        for (name, e, c) in images {
            let s = names
                .iter()
                .position(|x| x == name)
                .ok_or_else(|| HopfError::Invalid(format!("unknown symbol {name:?}")))?;
            data[s] = Some(SymbolData::OnU { exponent: e % target.n, coeff: Poly::constant(0, c.clone()) });
        }
        if let Some(g) = (0..algebra.num_generators()).find(|&g| data[g].is_none()) {
            return Err(HopfError::Invalid(format!("no image given for generator {:?}", algebra.generator(g).name)));
        }
        let sym = engine::build(&algebra, target.n, &target.beta, 0, &data)?;
        let matrices = (0..algebra.num_generators())
            .map(|g| columns_to_matrix(&sym.columns[g], &[], algebra.conductor(), target.n))
            .collect();
        ModuleAlgebraAction::new(algebra, target, matrices)
    }

    pub fn algebra(&self) -> &Arc<PresentedHopfAlgebra> {
        &self.algebra
    }

    pub fn target(&self) -> &CyclicAlgebra {
        &self.target
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn matrix(&self, generator: &str) -> Option<&Matrix> {
        self.algebra.generator_index(generator).map(|g| &self.matrices[g])
    }

    /// Matrix of a basis monomial, as the product of its letters.
    pub fn monomial_matrix(&self, m: Mono) -> Matrix {
        let n = self.target.n as usize;
        let mut acc = Matrix::identity(self.algebra.conductor(), n);
        for l in self.algebra.letters(m) {
            acc = acc.mul(&self.matrices[l]);
        }
        acc
    }

    /// Matrix of an element given in normal-form coordinates.
    pub fn vector_matrix(&self, v: &Vector) -> Matrix {
        let n = self.target.n as usize;
        let mut acc = Matrix::zeros(self.algebra.conductor(), n, n);
        for (m, c) in v {
            add_scaled(&mut acc, &self.monomial_matrix(*m), c);
        }
        acc
    }

    /// The same action in the basis `(cu)^p`, on `k[u]/(u^n − c^n β)`.
    pub fn rescaled(&self, c: &CycloNum) -> Result<Self, HopfError> {
        let n = self.target.n as usize;
        let conductor = self.algebra.conductor();
        let cinv = c.inverse()?;
        let mut d = Matrix::zeros(conductor, n, n);
        let mut dinv = Matrix::zeros(conductor, n, n);
        for p in 0..n {
            d[(p, p)] = c.pow(p as i64)?;
            dinv[(p, p)] = cinv.pow(p as i64)?;
        }
        let matrices = self.matrices.iter().map(|m| dinv.mul(m).mul(&d)).collect();
        let beta = &self.target.beta * &c.pow(n as i64)?;
        ModuleAlgebraAction::new(self.algebra.clone(), CyclicAlgebra::new(self.target.n, beta)?, matrices)
    }

    /// `s · u = …` for each generator.
    pub fn describe(&self) -> Vec<String> {
        let n = self.target.n as usize;
        self.algebra
            .generators()
            .iter()
            .zip(&self.matrices)
            .map(|(g, m)| {
                let col: Vec<CycloNum> = (0..n).map(|r| m[(r, 1 % n)].clone()).collect();
                format!("{}·u = {}", g.name, format_element(&col))
            })
            .collect()
    }
}

fn add_scaled(acc: &mut Matrix, m: &Matrix, c: &CycloNum) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            if !m[(i, j)].is_zero() {
                acc[(i, j)] += &(&m[(i, j)] * c);
            }
        }
    }
}

/// `Σ c_p u^p` as text.
pub fn format_element(v: &[CycloNum]) -> String {
    let parts: Vec<String> = v
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| {
            let cs = c.to_string();
            let cs = if cs.contains(' ') { format!("({cs})") } else { cs };
            match p {
                0 => cs,
                1 if c.is_one() => "u".into(),
                1 => format!("{cs}*u"),
                _ if c.is_one() => format!("u^{p}"),
                _ => format!("{cs}*u^{p}"),
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

pub(crate) fn columns_to_matrix(cols: &[Column], values: &[CycloNum], conductor: u32, n: u32) -> Matrix {
    let mut m = Matrix::zeros(conductor, n as usize, n as usize);
    for (p, col) in engine::evaluate_columns(cols, values).into_iter().enumerate() {
        for (e, c) in col {
            m[(e as usize, p)] = c;
        }
    }
    m
}

/// The algebra map `H → End(A)` applied to `h`.
pub fn action_of(act: &ModuleAlgebraAction, h: &HopfElement) -> Result<Matrix, HopfError> {
    if !Arc::ptr_eq(h.algebra(), &act.algebra) && h.algebra().id() != act.algebra.id() {
        return Err(HopfError::OwnerMismatch);
    }
    Ok(act.vector_matrix(h.vector()))
}

/// Outcome of [`verify_action`].
#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub algebra: String,
    pub n: u32,
    pub checks: Vec<AxiomCheck>,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn collect(name: &str, results: Vec<Option<String>>) -> AxiomCheck {
    let checked = results.len();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    let total = failures.len();
    let mut shown: Vec<String> = failures.into_iter().take(MAX_REPORTED).collect();
    if total > MAX_REPORTED {
        shown.push(format!("... {} more", total - MAX_REPORTED));
    }
    AxiomCheck { name: name.into(), passed: total == 0, checked, failures: shown }
}

fn column(m: &Matrix, p: usize) -> Vec<CycloNum> {
    (0..m.rows()).map(|r| m[(r, p)].clone()).collect()
}

/// Checks that every defining relation acts as zero, the module-algebra
/// rule `h·(u^p u^q) = Σ (h₁·u^p)(h₂·u^q)` for every generator, and
/// `h·1 = ε(h)1`.
pub fn verify_action(act: &ModuleAlgebraAction) -> ActionReport {
    let alg = &act.algebra;
    let n = act.target.n as usize;
    let mut needed: Vec<Mono> = Vec::new();
    for s in alg.swaps() {
        needed.extend(s.image.keys());
    }
    for g in alg.generators() {
        needed.extend(g.power_image.keys());
        for (a, b) in g.delta.keys() {
            needed.push(*a);
            needed.push(*b);
        }
    }
    needed.sort_unstable();
    needed.dedup();
    let cache: HashMap<Mono, Matrix> = needed.par_iter().map(|&m| (m, act.monomial_matrix(m))).collect();
    let cache = &cache;
    let mat = |v: &Vector| {
        let mut acc = Matrix::zeros(alg.conductor(), n, n);
        for (m, c) in v {
            add_scaled(&mut acc, &cache[m], c);
        }
        acc
    };

    let mut relations = Vec::new();
    for s in alg.swaps() {
        let lhs = act.matrices[s.left].mul(&act.matrices[s.right]);
        let ok = lhs == mat(&s.image);
        relations.push((!ok).then(|| {
            format!("{}*{} = {} fails", alg.generator(s.left).name, alg.generator(s.right).name, alg.format_vector(&s.image))
        }));
    }
    for (i, g) in alg.generators().iter().enumerate() {
        let mut p = Matrix::identity(alg.conductor(), n);
        for _ in 0..g.bound {
            p = p.mul(&act.matrices[i]);
        }
        let ok = p == mat(&g.power_image);
        relations.push((!ok).then(|| format!("{}^{} = {} fails", g.name, g.bound, alg.format_vector(&g.power_image))));
    }

    let cells: Vec<(usize, usize)> = (0..alg.num_generators()).flat_map(|g| (0..n).map(move |p| (g, p))).collect();
    let leibniz: Vec<Option<String>> = cells
        .par_iter()
        .flat_map_iter(|&(g, p)| {
            let spec = alg.generator(g);
            let left: Vec<(CycloNum, Vec<CycloNum>, Mono)> =
                spec.delta.iter().map(|((a, b), c)| (c.clone(), column(&cache[a], p), *b)).collect();
            (0..n).map(move |q| {
                let (e, f) = act.target.basis_product(p as u32, q as u32);
                let lhs: Vec<CycloNum> = column(&act.matrices[g], e as usize).iter().map(|x| x * &f).collect();
                let mut rhs = vec![CycloNum::zero(alg.conductor()); n];
                for (c, a, b) in &left {
                    let prod = act.target.mul(a, &column(&cache[b], q));
                    for (r, x) in rhs.iter_mut().zip(prod) {
                        *r += &(&x * c);
                    }
                }
                (lhs != rhs).then(|| {
                    format!(
                        "{}·(u^{p}·u^{q}) = {} but Σ(h₁·u^{p})(h₂·u^{q}) = {}",
                        spec.name,
                        format_element(&lhs),
                        format_element(&rhs)
                    )
                })
            })
        })
        .collect();

    let unit: Vec<Option<String>> = alg
        .generators()
        .iter()
        .zip(&act.matrices)
        .map(|(g, m)| {
            let got = column(m, 0);
            let mut want = vec![CycloNum::zero(alg.conductor()); n];
            want[0] = g.epsilon.clone();
            (got != want).then(|| format!("{}·1 = {} but ε({}) = {}", g.name, format_element(&got), g.name, g.epsilon))
        })
        .collect();

    ActionReport {
        algebra: alg.name().to_string(),
        n: act.target.n,
        checks: vec![collect("relations", relations), collect("module algebra", leibniz), collect("unit", unit)],
    }
}

/// Outcome of [`is_inner_faithful`]; on failure, a nonzero element acting as
/// zero or two grouplikes acting alike.
#[derive(Clone, Debug, Serialize)]
pub struct Faithfulness {
    pub faithful: bool,
    pub witness: Option<String>,
}

/// For pointed `H`: the grouplikes act faithfully and no nonzero
/// `(g,1)`-skew-primitive acts as zero.
pub fn is_inner_faithful(act: &ModuleAlgebraAction) -> Result<Faithfulness, HopfError> {
    let alg = &act.algebra;
    let n = act.target.n as usize;
    let grouplikes = alg.grouplikes();
    let mats: Vec<Matrix> = grouplikes.iter().map(|&g| act.monomial_matrix(g)).collect();
    for i in 0..grouplikes.len() {
        for j in i + 1..grouplikes.len() {
            if mats[i] == mats[j] {
                let witness = format!("{} - {}", alg.format_mono(grouplikes[i]), alg.format_mono(grouplikes[j]));
                return Ok(Faithfulness { faithful: false, witness: Some(witness) });
            }
        }
    }
    for &g in &grouplikes {
        let space = alg.skew_primitive_space(g, 0)?;
        if space.is_empty() {
            continue;
        }
        let images: Vec<Matrix> = space.iter().map(|v| act.vector_matrix(v)).collect();
        let mut big = Matrix::zeros(alg.conductor(), n * n, space.len());
        for (c, m) in images.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    big[(i * n + j, c)] = m[(i, j)].clone();
                }
            }
        }
        if let Some(kernel) = big.nullspace().into_iter().next() {
            let mut w = Vector::new();
            for (c, v) in kernel.iter().zip(&space) {
                w.axpy(c, v);
            }
            return Ok(Faithfulness { faithful: false, witness: Some(alg.format_vector(&w)) });
        }
    }
    Ok(Faithfulness { faithful: true, witness: None })
}
