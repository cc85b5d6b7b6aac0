use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::{Family, Grading};
use crate::cyclotomic::{totient, CycloNum};
use crate::double::DoubleBuildResult;
use crate::hopf::{HopfError, PresentedHopfAlgebra, Vector};
use crate::linalg::Matrix;

use super::engine::{self, Column, SymbolData};
use super::poly::{discrete_log, is_primitive_root, roots_of_unity_in_field, small_elements, ueval, Poly, PolyTerm};
use super::solve::{merge, solve_all, Contradiction, Solution, Status};
use super::{columns_to_matrix, is_inner_faithful, verify_action, CyclicAlgebra, ModuleAlgebraAction};

const SAMPLE_ATTEMPTS: usize = 64;

#[derive(Clone, Debug, Serialize)]
pub struct GradingInfo {
    pub generator: String,
    pub eigenvalue: CycloNum,
}

#[derive(Clone, Debug, Serialize)]
pub struct UnknownStatus {
    pub name: String,
    pub symbol: String,
    /// `zero`, `free`, `free nonzero`, `fixed`, `dependent` or `constrained`.
    pub status: String,
    pub value: Option<String>,
}

/// `s · u` in a family, with unknowns resolved as far as possible.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorImage {
    pub generator: String,
    pub image: String,
    /// The power of `u` when the image is a single term.
    pub exponent: Option<u32>,
}

/// A polynomial that must vanish on the family.
#[derive(Clone, Debug, Serialize)]
pub struct Constraint {
    pub text: String,
    pub terms: Vec<PolyTerm>,
}

/// Why a case has no solutions, or why a family was discarded.
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub case: String,
    pub trail: Vec<String>,
    pub reason: String,
    pub equations: Vec<String>,
}

/// Shared data of one classification run.
struct Ansatz {
    algebra: Arc<PresentedHopfAlgebra>,
    target: CyclicAlgebra,
    names: Vec<String>,
    /// Symbol each unknown belongs to.
    symbols: Vec<String>,
    /// `s · u^p` per generator.
    columns: Vec<Vec<Column>>,
}

/// A solved family of actions.
#[derive(Clone, Serialize)]
pub struct ActionFamily {
    pub case: String,
    pub unknowns: Vec<UnknownStatus>,
    pub action: Vec<GeneratorImage>,
    pub constraints: Vec<Constraint>,
    pub side_conditions: Vec<String>,
    pub unsolved: Vec<String>,
    pub parameters: Vec<String>,
    pub parameter_dimension: usize,
    pub inner_faithful: Option<bool>,
    pub trail: Vec<String>,
    #[serde(skip)]
    ansatz: Arc<Ansatz>,
    #[serde(skip)]
    solution: Solution,
}

impl std::fmt::Debug for ActionFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ActionFamily")
            .field("case", &self.case)
            .field("action", &self.action.iter().map(|a| format!("{}·u = {}", a.generator, a.image)).collect::<Vec<_>>())
            .field("constraints", &self.constraints.iter().map(|c| &c.text).collect::<Vec<_>>())
            .field("side_conditions", &self.side_conditions)
            .field("unsolved", &self.unsolved)
            .field("parameter_dimension", &self.parameter_dimension)
            .finish()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub algebra: String,
    pub n: u32,
    pub beta: CycloNum,
    pub grading: GradingInfo,
    pub unknowns: Vec<String>,
    pub families: Vec<ActionFamily>,
    pub certificates: Vec<Certificate>,
}

impl ClassificationReport {
    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }
}

fn symbol_value(alg: &PresentedHopfAlgebra, s: usize) -> Vector {
    let k = alg.num_generators();
    if s < k {
        alg.generator_monomial(s)
    } else {
        alg.defined_symbols()[s - k].value.clone()
    }
}

/// The power `e` with `s · u ∈ k u^e` forced by `g s = μ s g` and
/// `g · u = λu`, or `None` if `μλ` is not a power of `λ`.
fn forced_exponent(alg: &PresentedHopfAlgebra, g: usize, lambda: &CycloNum, n: u32, s: usize) -> Result<Option<u32>, HopfError> {
    let v = symbol_value(alg, s);
    let gv = alg.generator_monomial(g);
    let lhs = alg.mul(&gv, &v);
    let rhs = alg.mul(&v, &gv);
    let name = &alg.symbol_names()[s];
    let Some((m, c)) = rhs.iter().next() else {
        return Err(HopfError::Invalid(format!("{name} multiplies to zero")));
    };
    let mu = &lhs.get(m).cloned().unwrap_or_else(|| CycloNum::zero(alg.conductor())) * &c.inverse()?;
    if lhs != rhs.scale(&mu) {
        return Err(HopfError::Invalid(format!(
            "{name} is not homogeneous: {} does not commute with it up to a scalar",
            alg.generator(g).name
        )));
    }
    Ok(discrete_log(lambda, &(&mu * lambda), n))
}

fn case_text(names: &[String], mask: u32) -> String {
    if names.is_empty() {
        return "no unknowns".into();
    }
    names
        .iter()
        .enumerate()
        .map(|(i, n)| if mask >> i & 1 == 1 { format!("{n} ≠ 0") } else { format!("{n} = 0") })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Like [`case_text`], but an unknown folded in by merging reads as `any`.
fn family_case_text(names: &[String], solution: &Solution) -> String {
    if names.is_empty() {
        return "no unknowns".into();
    }
    names
        .iter()
        .enumerate()
        .map(|(i, n)| match (&solution.status[i], solution.nonzero[i]) {
            (Status::Zero, _) => format!("{n} = 0"),
            (_, true) => format!("{n} ≠ 0"),
            _ => format!("{n} any"),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn certificate(names: &[String], c: Contradiction) -> Certificate {
    Certificate { case: case_text(names, c.mask), trail: c.trail, reason: c.reason, equations: c.equations }
}

impl ActionFamily {
    fn new(ansatz: Arc<Ansatz>, solution: Solution) -> Self {
        let names = &ansatz.names;
        let fmt = |p: &Poly| p.format(names);
        let unknowns = names
            .iter()
            .enumerate()
            .map(|(i, name)| {
                let (status, value) = match &solution.status[i] {
                    Status::Zero => ("zero", None),
                    Status::Free if solution.nonzero[i] => ("free nonzero", None),
                    Status::Free => ("free", None),
                    Status::Value(v) => ("fixed", Some(v.to_string())),
                    Status::Dependent(p) => ("dependent", Some(fmt(p))),
                    Status::Root(m) => ("constrained", Some(format!("root of {}", fmt(&Poly::from_univariate(names.len(), i, m))))),
                };
                UnknownStatus { name: name.clone(), symbol: ansatz.symbols[i].clone(), status: status.into(), value }
            })
            .collect();

        let resolve = |p: &Poly| -> Poly { resolve(&solution, p) };
        let action = ansatz
            .algebra
            .generators()
            .iter()
            .enumerate()
            .map(|(g, spec)| {
                let col = ansatz.columns[g].get(1 % ansatz.target.n() as usize).cloned().unwrap_or_default();
                let terms: Vec<(u32, Poly)> =
                    col.iter().map(|(e, p)| (*e, resolve(p))).filter(|(_, p)| !p.is_zero()).collect();
                let exponent = if terms.len() == 1 { Some(terms[0].0) } else { None };
                let image = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms
                        .iter()
                        .map(|(e, p)| {
                            let c = fmt(p);
                            let c = if p.len() > 1 { format!("({c})") } else { c };
                            match e {
                                0 => c,
                                1 => format!("{c}*u"),
                                _ => format!("{c}*u^{e}"),
                            }
                        })
                        .collect::<Vec<_>>()
                        .join(" + ")
                };
                GeneratorImage { generator: spec.name.clone(), image, exponent }
            })
            .collect();

        let mut constraints = Vec::new();
        for (i, st) in solution.status.iter().enumerate() {
            if let Status::Root(m) = st {
                let p = Poly::from_univariate(names.len(), i, m);
                constraints.push(Constraint { text: format!("{} = 0", fmt(&p)), terms: p.to_terms() });
            }
        }
        for p in &solution.products {
            constraints.push(Constraint { text: format!("{} = 0", fmt(p)), terms: p.to_terms() });
        }
        let side_conditions = solution.side.iter().map(|p| format!("{} ≠ 0", fmt(p))).collect();
        let unsolved = solution.unsolved.iter().map(|e| format!("{} = 0  [{}]", fmt(&e.poly), e.origin)).collect();
        let parameters: Vec<String> = (0..names.len())
            .filter(|&i| matches!(solution.status[i], Status::Free | Status::Root(_)))
            .map(|i| names[i].clone())
            .collect();
        let free = solution.status.iter().filter(|s| **s == Status::Free).count();
        let parameter_dimension = free.saturating_sub(solution.products.len());
        ActionFamily {
            case: family_case_text(names, &solution),
            unknowns,
            action,
            constraints,
            side_conditions,
            unsolved,
            parameters,
            parameter_dimension,
            inner_faithful: None,
            trail: solution.trail.clone(),
            ansatz,
            solution,
        }
    }

    pub fn algebra(&self) -> &Arc<PresentedHopfAlgebra> {
        &self.ansatz.algebra
    }

    pub fn target(&self) -> &CyclicAlgebra {
        &self.ansatz.target
    }

    /// Whether some unknown is zero throughout the family.
    pub fn status_of(&self, unknown: &str) -> Option<&str> {
        self.unknowns.iter().find(|u| u.name == unknown).map(|u| u.status.as_str())
    }

    /// Full assignment of the unknowns from values of the parameters.
    fn assignment(&self, values: &[(&str, CycloNum)]) -> Result<Vec<CycloNum>, HopfError> {
        let names = &self.ansatz.names;
        let conductor = self.ansatz.algebra.conductor();
        let zero = CycloNum::zero(conductor);
        let lookup = |name: &str| -> Result<CycloNum, HopfError> {
            values
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| HopfError::Invalid(format!("no value given for {name}")))
        };
        let mut out = vec![zero.clone(); names.len()];
        for (i, st) in self.solution.status.iter().enumerate() {
            out[i] = match st {
                Status::Zero | Status::Dependent(_) => zero.clone(),
                Status::Value(v) => v.clone(),
                Status::Free | Status::Root(_) => lookup(&names[i])?,
            };
        }
        for &v in self.solution.order.iter().rev() {
            if let Status::Dependent(p) = &self.solution.status[v] {
                out[v] = safe_eval(p, &out).ok_or_else(|| HopfError::Invalid(format!("{} involves a zero denominator", names[v])))?;
            }
        }
        for (i, st) in self.solution.status.iter().enumerate() {
            if let Status::Root(m) = st {
                if !ueval(m, &out[i]).is_zero() {
                    return Err(HopfError::Invalid(format!("{} does not satisfy its constraint", names[i])));
                }
            }
            if self.solution.nonzero[i] && out[i].is_zero() {
                return Err(HopfError::Invalid(format!("{} must be nonzero", names[i])));
            }
        }
        for p in self.solution.products.iter().chain(self.solution.unsolved.iter().map(|e| &e.poly)) {
            if !safe_eval(p, &out).is_some_and(|v| v.is_zero()) {
                return Err(HopfError::Invalid(format!("constraint {} = 0 fails", p.format(names))));
            }
        }
        for p in &self.solution.side {
            if safe_eval(p, &out).is_none_or(|v| v.is_zero()) {
                return Err(HopfError::Invalid(format!("side condition {} ≠ 0 fails", p.format(names))));
            }
        }
        Ok(out)
    }

    /// The action at given parameter values.
    pub fn instantiate(&self, values: &[(&str, CycloNum)]) -> Result<ModuleAlgebraAction, HopfError> {
        let full = self.assignment(values)?;
        let alg = &self.ansatz.algebra;
        let n = self.ansatz.target.n();
        let matrices: Vec<Matrix> =
            (0..alg.num_generators()).map(|g| columns_to_matrix(&self.ansatz.columns[g], &full, alg.conductor(), n)).collect();
        ModuleAlgebraAction::new(alg.clone(), self.ansatz.target.clone(), matrices)
    }

    /// Random parameter values satisfying the constraints, with `hints` tried
    /// first for constrained unknowns; `None` if no instance is found in the
    /// working field.
    pub fn sample(&self, seed: u64, hints: &[CycloNum]) -> Option<Vec<(String, CycloNum)>> {
        if !self.solution.unsolved.is_empty() {
            return None;
        }
        let names = &self.ansatz.names;
        let conductor = self.ansatz.algebra.conductor();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut root_choices: Vec<(usize, Vec<CycloNum>)> = Vec::new();
        for (i, st) in self.solution.status.iter().enumerate() {
            if let Status::Root(m) = st {
                let roots = find_roots(m, hints, conductor);
                if roots.is_empty() {
                    return None;
                }
                root_choices.push((i, roots));
            }
        }
        for _ in 0..SAMPLE_ATTEMPTS {
            let mut vals: Vec<Option<CycloNum>> = vec![None; names.len()];
            for (i, st) in self.solution.status.iter().enumerate() {
                if *st == Status::Free {
                    vals[i] = Some(random_nonzero(&mut rng, conductor));
                }
            }
            for (i, roots) in &root_choices {
                vals[*i] = Some(roots[rng.gen_range(0..roots.len())].clone());
            }
            let mut ok = true;
            for p in &self.solution.products {
                if !solve_product(p, &mut vals, hints, conductor, &mut rng) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let params: Vec<(String, CycloNum)> = names
                .iter()
                .enumerate()
                .filter_map(|(i, n)| vals[i].clone().map(|v| (n.clone(), v)))
                .collect();
            let refs: Vec<(&str, CycloNum)> = params.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
            if self.assignment(&refs).is_ok() {
                return Some(params);
            }
        }
        None
    }

    /// Instantiates at a sampled point.
    pub fn sample_action(&self, seed: u64, hints: &[CycloNum]) -> Option<ModuleAlgebraAction> {
        let params = self.sample(seed, hints)?;
        let refs: Vec<(&str, CycloNum)> = params.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
        self.instantiate(&refs).ok()
    }
}

/// Substitutes fixed, zero and dependent unknowns as far as they are known.
fn resolve(s: &Solution, p: &Poly) -> Poly {
    let mut p = p.clone();
    let nvars = s.status.len();
    for (i, st) in s.status.iter().enumerate() {
        match st {
            Status::Zero if p.min_degree_in(i) >= 0 => p = p.substitute_value(i, &CycloNum::zero(p.conductor())),
            Status::Value(v) => p = p.substitute_value(i, v),
            _ => {}
        }
    }
    for &v in &s.order {
        if let Status::Dependent(e) = &s.status[v] {
            if let Some(q) = p.try_substitute(v, e) {
                p = q;
            }
        }
    }
    debug_assert_eq!(p.nvars(), nvars);
    p
}

fn safe_eval(p: &Poly, values: &[CycloNum]) -> Option<CycloNum> {
    for (e, _) in p.terms() {
        for (i, &k) in e.iter().enumerate() {
            if k < 0 && values[i].is_zero() {
                return None;
            }
        }
    }
    Some(p.eval(values))
}

fn random_nonzero(rng: &mut ChaCha8Rng, conductor: u32) -> CycloNum {
    let k = rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    let j = rng.gen_range(0..conductor.max(1) as i64);
    &CycloNum::from_int(conductor, k) * &CycloNum::root_of_unity(conductor, j)
}

/// Roots in the working field: hints, roots of unity, and small elements.
fn find_roots(m: &[CycloNum], hints: &[CycloNum], conductor: u32) -> Vec<CycloNum> {
    let mut out: Vec<CycloNum> = Vec::new();
    let consider = |out: &mut Vec<CycloNum>, x: &CycloNum| {
        if x.conductor() == conductor && ueval(m, x).is_zero() && !out.contains(x) {
            out.push(x.clone());
        }
    };
    for x in hints.iter().chain(&roots_of_unity_in_field(conductor)) {
        consider(&mut out, x);
    }
    let degree = totient(conductor);
    if out.is_empty() && degree <= 4 {
        for x in &small_elements(conductor, degree, 2) {
            consider(&mut out, x);
        }
    }
    out
}

/// Solves a constraint `c·θ^a + d = 0` for one of its unknowns, given the others.
fn solve_product(p: &Poly, vals: &mut [Option<CycloNum>], hints: &[CycloNum], conductor: u32, rng: &mut ChaCha8Rng) -> bool {
    let vars: Vec<usize> = p.vars().into_iter().collect();
    let Some(&v) = vars.iter().min_by_key(|&&i| p.degree_in(i).abs().max(p.min_degree_in(i).abs())) else {
        return false;
    };
    let mut q = p.clone();
    for &w in &vars {
        if w != v {
            match &vals[w] {
                Some(x) => q = q.substitute_value(w, x),
                None => return false,
            }
        }
    }
    let q = q.strip_content();
    let Some(coeffs) = q.univariate(v) else { return false };
    let roots = if coeffs.len() == 2 {
        vec![-&(&coeffs[0] * &coeffs[1].inverse().expect("nonzero leading coefficient"))]
    } else {
        find_roots(&super::poly::umonic(&coeffs), hints, conductor)
    };
    if roots.is_empty() {
        return false;
    }
    vals[v] = Some(roots[rng.gen_range(0..roots.len())].clone());
    true
}

fn run(ansatz: Ansatz, equations: &[engine::Equation], keep_faithful_only: bool, grading: GradingInfo) -> ClassificationReport {
    let ansatz = Arc::new(ansatz);
    let names = ansatz.names.clone();
    let outcomes = solve_all(equations, &names);
    let mut certificates = Vec::new();
    let mut solutions = Vec::new();
    for o in outcomes {
        match o {
            Ok(s) => solutions.push(s),
            Err(c) => certificates.push(certificate(&names, c)),
        }
    }
    if keep_faithful_only {
        let mut kept = Vec::new();
        for s in solutions {
            let fam = ActionFamily::new(ansatz.clone(), s.clone());
            match fam.sample_action(0, &[]).map(|a| is_inner_faithful(&a)) {
                Some(Ok(f)) if !f.faithful => certificates.push(Certificate {
                    case: fam.case.clone(),
                    trail: fam.trail.clone(),
                    reason: format!("not inner-faithful: {} acts as zero", f.witness.unwrap_or_default()),
                    equations: vec![],
                }),
                _ => kept.push(s),
            }
        }
        solutions = kept;
    }
    let families = merge(solutions)
        .into_iter()
        .map(|s| {
            let mut fam = ActionFamily::new(ansatz.clone(), s);
            if keep_faithful_only {
                fam.inner_faithful = fam.sample_action(0, &[]).and_then(|a| is_inner_faithful(&a).ok()).map(|f| f.faithful);
            }
            fam
        })
        .collect();
    ClassificationReport {
        algebra: ansatz.algebra.name().to_string(),
        n: ansatz.target.n(),
        beta: ansatz.target.beta().clone(),
        grading,
        unknowns: names,
        families,
        certificates,
    }
}

/// Classifies inner-faithful module-algebra structures on `k[u]/(u^n − 1)`
/// with `g · u = λu` for the given grading.
pub fn classify_with_grading(alg: Arc<PresentedHopfAlgebra>, grading: &Grading) -> Result<ClassificationReport, HopfError> {
    let g = alg
        .generator_index(&grading.generator)
        .ok_or_else(|| HopfError::Invalid(format!("no generator {:?}", grading.generator)))?;
    let n = grading.order;
    let lambda = grading.eigenvalue.embed_to_conductor(alg.conductor())?;
    if !is_primitive_root(&lambda, n) {
        return Err(HopfError::Invalid(format!("{lambda} is not a primitive {n}-th root of unity")));
    }
    let conductor = alg.conductor();
    let target = CyclicAlgebra::standard(n, conductor);
    let symbols = alg.symbol_names();
    let mut exponents: Vec<Option<Option<u32>>> = vec![None; symbols.len()];
    for s in 0..symbols.len() {
        if s != g {
            exponents[s] = Some(forced_exponent(&alg, g, &lambda, n, s)?);
        }
    }
    let unknown_of: Vec<Option<usize>> = {
        let mut next = 0;
        exponents
            .iter()
            .map(|e| match e {
                Some(Some(_)) => {
                    next += 1;
                    Some(next - 1)
                }
                _ => None,
            })
            .collect()
    };
    let nvars = unknown_of.iter().flatten().count();
    let mut names = Vec::new();
    let mut owners = Vec::new();
    let data: Vec<Option<SymbolData>> = (0..symbols.len())
        .map(|s| {
            Some(if s == g {
                SymbolData::OnU { exponent: 1, coeff: Poly::constant(nvars, lambda.clone()) }
            } else if let (Some(Some(e)), Some(i)) = (exponents[s], unknown_of[s]) {
                names.push(format!("θ_{}", symbols[s]));
                owners.push(symbols[s].clone());
                SymbolData::OnU { exponent: e, coeff: Poly::var(conductor, nvars, i) }
            } else {
                SymbolData::OnU { exponent: 0, coeff: Poly::zero(conductor, nvars) }
            })
        })
        .collect();
    let sym = engine::build(&alg, n, target.beta(), nvars, &data)?;
    let columns = sym.columns[..alg.num_generators()].to_vec();
    let info = GradingInfo { generator: grading.generator.clone(), eigenvalue: lambda };
    let ansatz = Ansatz { algebra: alg, target, names, symbols: owners, columns };
    Ok(run(ansatz, &sym.equations, true, info))
}

/// Classifies the module-algebra structures of a catalog algebra, with the
/// grading of [`Family::grading`].
pub fn classify_actions(family: &Family) -> Result<ClassificationReport, HopfError> {
    classify_with_grading(Arc::new(family.build()?), &family.grading())
}

fn constant_columns(m: &Matrix, nvars: usize) -> Vec<Column> {
    (0..m.cols())
        .map(|p| {
            (0..m.rows())
                .filter(|&r| !m[(r, p)].is_zero())
                .map(|r| (r as u32, Poly::constant(nvars, m[(r, p)].clone())))
                .collect()
        })
        .collect()
}

/// All ways of letting the dual generators of `D(H)` act so that `A`
/// becomes a `D(H)`-module algebra extending `act`.
pub fn extend_to_double(act: &ModuleAlgebraAction, d: &DoubleBuildResult) -> Result<ClassificationReport, HopfError> {
    let dd = d.double.clone();
    let h = act.algebra();
    let kk = d.dual_generators();
    if dd.num_generators() != kk + h.num_generators()
        || h.generators().iter().enumerate().any(|(i, g)| dd.generator(kk + i).name != g.name || dd.generator(kk + i).bound != g.bound)
    {
        return Err(HopfError::Invalid("the action's algebra is not the H-part of this double".into()));
    }
    let report = verify_action(act);
    if !report.passed() {
        let failures: Vec<String> = report.checks.iter().flat_map(|c| c.failures.clone()).collect();
        return Err(HopfError::Invalid(format!("not a module-algebra action: {}", failures.join("; "))));
    }
    let faithful = is_inner_faithful(act)?;
    if !faithful.faithful {
        return Err(HopfError::Invalid(format!(
            "the action is not inner-faithful: {} acts as zero",
            faithful.witness.unwrap_or_default()
        )));
    }

    let target = act.target().clone();
    let n = target.n() as usize;
    let conductor = dd.conductor();
    let primitive = |m: &Matrix| -> Option<CycloNum> {
        let lambda = m[(1 % n, 1 % n)].clone();
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)].is_zero()));
        let powers = (0..n).all(|p| lambda.pow(p as i64).is_ok_and(|x| x == m[(p, p)]));
        (diagonal && powers && is_primitive_root(&lambda, n as u32)).then_some(lambda)
    };
    let (gi, lambda) = act
        .matrices()
        .iter()
        .enumerate()
        .find_map(|(i, m)| primitive(m).map(|l| (i, l)))
        .ok_or_else(|| HopfError::Invalid("no generator acts as u ↦ λu with λ a primitive root of unity".into()))?;
    let g = kk + gi;

    let symbols = dd.symbol_names();
    let ndef = dd.defined_symbols().len();
    let k_total = dd.num_generators();
    let h_dim = d.h_dimension() as u32;
    let fixed_defined: Vec<bool> = dd.defined_symbols().iter().map(|s| s.value.keys().all(|m| *m < h_dim)).collect();
    let is_unknown = |s: usize| if s < k_total { s < kk } else { !fixed_defined[s - k_total] };
    let mut exponents: Vec<Option<u32>> = vec![None; symbols.len()];
    for s in 0..symbols.len() {
        if is_unknown(s) {
            exponents[s] = forced_exponent(&dd, g, &lambda, n as u32, s)?;
        }
    }
    let nvars = (0..symbols.len()).filter(|&s| is_unknown(s) && exponents[s].is_some()).count();
    let mut names = Vec::new();
    let mut owners = Vec::new();
    let mut data: Vec<Option<SymbolData>> = Vec::with_capacity(symbols.len());
    for s in 0..symbols.len() {
        let entry = if s < k_total && s >= kk {
            SymbolData::Columns(constant_columns(&act.matrices()[s - kk], nvars))
        } else if s >= k_total && fixed_defined[s - k_total] {
            SymbolData::Columns(constant_columns(&act.vector_matrix(&dd.defined_symbols()[s - k_total].value), nvars))
        } else if let Some(e) = exponents[s] {
            let i = names.len();
            names.push(format!("θ_{}", symbols[s]));
            owners.push(symbols[s].clone());
            SymbolData::OnU { exponent: e, coeff: Poly::var(conductor, nvars, i) }
        } else {
            SymbolData::OnU { exponent: 0, coeff: Poly::zero(conductor, nvars) }
        };
        data.push(Some(entry));
    }
    debug_assert_eq!(data.len(), k_total + ndef);
    let sym = engine::build(&dd, target.n(), target.beta(), nvars, &data)?;
    let columns = sym.columns[..k_total].to_vec();
    let info = GradingInfo { generator: dd.generator(g).name.clone(), eigenvalue: lambda };
    let ansatz = Ansatz { algebra: dd, target, names, symbols: owners, columns };
    Ok(run(ansatz, &sym.equations, false, info))
}
