//! A specialized solver for the constraint systems produced by the engine:
//! zero/nonzero case splits, univariate gcds with branching over roots of
//! unity, elimination of unknowns occurring linearly with a monomial
//! coefficient, and pure-product constraints. Anything else is reported
//! back unsolved.

use rayon::prelude::*;

use crate::cyclotomic::CycloNum;

use super::engine::Equation;
use super::poly::{split_roots_of_unity, udegree, ugcd, Poly};

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Status {
    Zero,
    Free,
    Value(CycloNum),
    /// Determined by the other unknowns.
    Dependent(Poly),
    /// A root of the monic univariate polynomial (coefficients from degree 0).
    Root(Vec<CycloNum>),
}

#[derive(Clone, Debug)]
pub(crate) struct Solution {
    pub mask: u32,
    pub status: Vec<Status>,
    /// Unknowns assumed nonzero.
    pub nonzero: Vec<bool>,
    pub trail: Vec<String>,
    /// Polynomials that must not vanish.
    pub side: Vec<Poly>,
    /// `c·θ^a + d = 0` constraints among free unknowns.
    pub products: Vec<Poly>,
    pub unsolved: Vec<Equation>,
    /// Dependent unknowns in the order they were solved for.
    pub order: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Contradiction {
    pub mask: u32,
    pub trail: Vec<String>,
    pub reason: String,
    pub equations: Vec<String>,
}

type Outcome = Result<Solution, Contradiction>;

struct Ctx<'a> {
    names: &'a [String],
}

impl Ctx<'_> {
    fn fmt(&self, p: &Poly) -> String {
        p.format(self.names)
    }

    fn fmt_uni(&self, coeffs: &[CycloNum], v: usize) -> String {
        self.fmt(&Poly::from_univariate(self.names.len(), v, coeffs))
    }

    fn eq_text(&self, e: &Equation) -> String {
        format!("{} = 0  [{}]", self.fmt(&e.poly), e.origin)
    }

    fn contradiction(&self, s: &Solution, reason: String, equations: Vec<String>) -> Outcome {
        Err(Contradiction { mask: s.mask, trail: s.trail.clone(), reason, equations })
    }
}

/// Solves every zero/nonzero case of the unknowns, in order of the case mask
/// (bit `i` set when unknown `i` is nonzero).
pub(crate) fn solve_all(equations: &[Equation], names: &[String]) -> Vec<Outcome> {
    let nvars = names.len();
    let cases: Vec<u32> = (0..1u32 << nvars).collect();
    let per_case: Vec<Vec<Outcome>> = cases
        .par_iter()
        .map(|&mask| {
            let ctx = Ctx { names };
            let nonzero: Vec<bool> = (0..nvars).map(|i| mask >> i & 1 == 1).collect();
            let status = nonzero.iter().map(|&nz| if nz { Status::Free } else { Status::Zero }).collect();
            let eqs = equations
                .iter()
                .map(|e| {
                    let mut p = e.poly.clone();
                    for (i, nz) in nonzero.iter().enumerate() {
                        if !nz {
                            p = p.substitute_value(i, &CycloNum::zero(p.conductor()));
                        }
                    }
                    Equation { poly: p, origin: e.origin.clone() }
                })
                .collect();
            let sol = Solution {
                mask,
                status,
                nonzero,
                trail: Vec::new(),
                side: Vec::new(),
                products: Vec::new(),
                unsolved: Vec::new(),
                order: Vec::new(),
            };
            run(&ctx, sol, eqs)
        })
        .collect();
    per_case.into_iter().flatten().collect()
}

fn substitute_all(s: &mut Solution, eqs: &mut [Equation], v: usize, value: &Poly) {
    for e in eqs.iter_mut() {
        e.poly = e.poly.try_substitute(v, value).expect("equations have nonnegative exponents");
    }
    for st in s.status.iter_mut() {
        if let Status::Dependent(p) = st {
            if let Some(q) = p.try_substitute(v, value) {
                *p = q;
            }
        }
    }
    for p in s.side.iter_mut().chain(s.products.iter_mut()) {
        if let Some(q) = p.try_substitute(v, value) {
            *p = q;
        }
    }
}

/// Brings equations and conditions to normal form; reports a contradiction
/// if a nonzero constant must vanish or a side condition must.
fn normalize(ctx: &Ctx, s: &mut Solution, eqs: &mut Vec<Equation>) -> Result<(), Contradiction> {
    let roots: Vec<(usize, Vec<CycloNum>)> = s
        .status
        .iter()
        .enumerate()
        .filter_map(|(i, st)| if let Status::Root(m) = st { Some((i, m.clone())) } else { None })
        .collect();
    let mut kept = Vec::with_capacity(eqs.len());
    for mut e in eqs.drain(..) {
        for (i, m) in &roots {
            e.poly = e.poly.reduce_mod(*i, m);
        }
        e.poly = e.poly.strip_content();
        if e.poly.is_zero() {
            continue;
        }
        if let Some(c) = e.poly.as_constant() {
            let text = format!("{c} = 0  [{}]", e.origin);
            return Err(Contradiction { mask: s.mask, trail: s.trail.clone(), reason: "a nonzero constant must vanish".into(), equations: vec![text] });
        }
        kept.push(e);
    }
    // Equal equations up to scaling add nothing.
    kept.sort_by_key(|e| e.poly.len());
    let mut unique: Vec<Equation> = Vec::new();
    for e in kept {
        let m = e.poly.monic();
        if !unique.iter().any(|u| u.poly.monic() == m) {
            unique.push(e);
        }
    }
    *eqs = unique;

    let mut side = Vec::new();
    for p in s.side.drain(..) {
        let mut p = p;
        for (i, m) in &roots {
            p = p.reduce_mod(*i, m);
        }
        let p = p.strip_content();
        match p.as_constant() {
            Some(c) if c.is_zero() => {
                return Err(Contradiction {
                    mask: s.mask,
                    trail: s.trail.clone(),
                    reason: "an unknown assumed nonzero is forced to zero".into(),
                    equations: vec![],
                })
            }
            Some(_) => {}
            None => {
                if !side.contains(&p) {
                    side.push(p);
                }
            }
        }
    }
    s.side = side;
    let mut products = Vec::new();
    for p in s.products.drain(..) {
        let p = p.strip_content();
        if p.is_zero() {
            continue;
        }
        if let Some(c) = p.as_constant() {
            let text = format!("{c} = 0");
            return Err(Contradiction { mask: s.mask, trail: s.trail.clone(), reason: "a constraint reduces to a nonzero constant".into(), equations: vec![text] });
        }
        products.push(p);
    }
    s.products = products;
    let _ = ctx;
    Ok(())
}

fn run(ctx: &Ctx, mut s: Solution, mut eqs: Vec<Equation>) -> Vec<Outcome> {
    loop {
        if let Err(c) = normalize(ctx, &mut s, &mut eqs) {
            return vec![Err(c)];
        }
        if eqs.is_empty() {
            return vec![Ok(s)];
        }
        match univariate_pass(ctx, &mut s, &mut eqs) {
            Pass::Progress => continue,
            Pass::Branch(branches) => {
                return branches.into_iter().flat_map(|(b, e)| run(ctx, b, e)).collect();
            }
            Pass::Fail(c) => return vec![c],
            Pass::Nothing => {}
        }
        match linear_pass(ctx, &mut s, &mut eqs) {
            Pass::Progress => continue,
            Pass::Fail(c) => return vec![c],
            _ => {}
        }
        if product_pass(&mut s, &mut eqs) {
            continue;
        }
        s.unsolved = std::mem::take(&mut eqs);
        return vec![Ok(s)];
    }
}

enum Pass {
    Nothing,
    Progress,
    Branch(Vec<(Solution, Vec<Equation>)>),
    Fail(Outcome),
}

fn set_value(s: &mut Solution, eqs: &mut [Equation], v: usize, r: &CycloNum) {
    s.status[v] = Status::Value(r.clone());
    let nvars = s.status.len();
    substitute_all(s, eqs, v, &Poly::constant(nvars, r.clone()));
}

fn univariate_pass(ctx: &Ctx, s: &mut Solution, eqs: &mut Vec<Equation>) -> Pass {
    let nvars = s.status.len();
    for v in 0..nvars {
        if !matches!(s.status[v], Status::Free | Status::Root(_)) {
            continue;
        }
        let (uni, rest): (Vec<Equation>, Vec<Equation>) = eqs.drain(..).partition(|e| e.poly.univariate(v).is_some());
        *eqs = rest;
        if uni.is_empty() {
            continue;
        }
        let mut g = uni[0].poly.univariate(v).unwrap();
        for e in &uni[1..] {
            g = ugcd(&g, &e.poly.univariate(v).unwrap());
        }
        if let Status::Root(m) = &s.status[v] {
            g = ugcd(&g, m);
        }
        let g = super::poly::umonic(&g);
        let deg = udegree(&g).unwrap_or(0);
        if deg == 0 {
            let mut texts: Vec<String> = uni.iter().map(|e| ctx.eq_text(e)).collect();
            if let Status::Root(m) = &s.status[v] {
                texts.push(format!("{} = 0  [earlier constraint]", ctx.fmt_uni(m, v)));
            }
            let reason = format!("the equations in {} have no common root", ctx.names[v]);
            return Pass::Fail(ctx.contradiction(s, reason, texts));
        }
        if deg == 1 {
            let r = -&g[0];
            s.trail.push(format!("{} = {r}", ctx.names[v]));
            set_value(s, eqs, v, &r);
            return Pass::Progress;
        }
        let (roots, residual) = split_roots_of_unity(&g);
        let rdeg = udegree(&residual).unwrap_or(0);
        let mut branches = Vec::new();
        for r in &roots {
            let mut b = s.clone();
            let mut e = eqs.clone();
            b.trail.push(format!("{} = {r}, a root of {}", ctx.names[v], ctx.fmt_uni(&g, v)));
            set_value(&mut b, &mut e, v, r);
            branches.push((b, e));
        }
        if rdeg >= 1 {
            let mut b = s.clone();
            let mut e = eqs.clone();
            if rdeg == 1 {
                let r = -&residual[0];
                b.trail.push(format!("{} = {r}", ctx.names[v]));
                set_value(&mut b, &mut e, v, &r);
            } else {
                b.trail.push(format!("{} is a root of {}", ctx.names[v], ctx.fmt_uni(&residual, v)));
                b.status[v] = Status::Root(residual);
            }
            branches.push((b, e));
        }
        if branches.len() == 1 {
            let (b, e) = branches.pop().unwrap();
            *s = b;
            *eqs = e;
            return Pass::Progress;
        }
        return Pass::Branch(branches);
    }
    Pass::Nothing
}

fn linear_pass(ctx: &Ctx, s: &mut Solution, eqs: &mut Vec<Equation>) -> Pass {
    let mut order: Vec<usize> = (0..eqs.len()).collect();
    order.sort_by_key(|&i| (eqs[i].poly.len(), eqs[i].poly.vars().len()));
    for i in order {
        let vars = eqs[i].poly.vars();
        for v in vars {
            if s.status[v] != Status::Free {
                continue;
            }
            let Some((a, b)) = eqs[i].poly.linear_in(v) else { continue };
            let Some(ainv) = a.inverse_monomial() else { continue };
            let e = eqs.remove(i);
            if b.is_zero() {
                let reason = format!("{} ≠ 0 is forced to vanish", ctx.names[v]);
                return Pass::Fail(ctx.contradiction(s, reason, vec![ctx.eq_text(&e)]));
            }
            let expr = b.neg().mul(&ainv);
            s.trail.push(format!("{} = {}", ctx.names[v], ctx.fmt(&expr)));
            if expr.as_monomial().is_none() {
                s.side.push(b);
            }
            s.status[v] = Status::Dependent(expr.clone());
            s.order.push(v);
            substitute_all(s, eqs, v, &expr);
            return Pass::Progress;
        }
    }
    Pass::Nothing
}

/// `c·θ^a + d = 0` with every exponent at least two becomes a constraint.
fn product_pass(s: &mut Solution, eqs: &mut Vec<Equation>) -> bool {
    let Some(i) = eqs.iter().position(|e| e.poly.len() == 2 && e.poly.terms().any(|(ex, _)| ex.iter().all(|&x| x == 0)))
    else {
        return false;
    };
    let e = eqs.remove(i);
    s.products.push(e.poly);
    true
}

/// Merges a case with `θ_v = 0` into the case with `θ_v` free and nonzero
/// when they agree otherwise, repeatedly.
pub(crate) fn merge(mut sols: Vec<Solution>) -> Vec<Solution> {
    loop {
        let mut merged = false;
        'outer: for i in 0..sols.len() {
            for j in 0..sols.len() {
                if i == j {
                    continue;
                }
                if let Some(v) = mergeable(&sols[i], &sols[j]) {
                    sols[j].nonzero[v] = false;
                    sols.remove(i);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if !merged {
            return sols;
        }
    }
}

/// `Some(v)` when `zero` has `θ_v = 0`, `free` has `θ_v` free, and nothing
/// else differs or mentions `θ_v`.
fn mergeable(zero: &Solution, free: &Solution) -> Option<usize> {
    let n = zero.status.len();
    let v = (0..n).find(|&v| zero.status[v] == Status::Zero && free.status[v] == Status::Free)?;
    for w in 0..n {
        if w == v {
            continue;
        }
        if zero.status[w] != free.status[w] || zero.nonzero[w] != free.nonzero[w] {
            return None;
        }
        if let Status::Dependent(p) = &free.status[w] {
            if p.vars().contains(&v) {
                return None;
            }
        }
    }
    let same = |a: &[Poly], b: &[Poly]| a.len() == b.len() && a.iter().all(|p| b.contains(p));
    if !same(&zero.side, &free.side) || !same(&zero.products, &free.products) {
        return None;
    }
    if free.side.iter().chain(&free.products).any(|p| p.vars().contains(&v)) {
        return None;
    }
    if !zero.unsolved.is_empty() || !free.unsolved.is_empty() {
        return None;
    }
    Some(v)
}
