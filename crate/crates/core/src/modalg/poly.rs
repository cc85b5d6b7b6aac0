//! Sparse multivariate polynomials over `Q(ζ_M)` in a fixed set of unknowns,
//! and the univariate helpers the solver needs.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::cyclotomic::{gcd, CycloNum};

/// `Σ c · θ^e` with exponent vectors of a fixed length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    conductor: u32,
    nvars: usize,
    terms: BTreeMap<Vec<i32>, CycloNum>,
}

/// One term of a serialized polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct PolyTerm {
    pub coefficient: CycloNum,
    pub exponents: Vec<i32>,
}

impl Poly {
    pub fn zero(conductor: u32, nvars: usize) -> Self {
        Poly { conductor, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: CycloNum) -> Self {
        let mut p = Poly::zero(c.conductor(), nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(conductor: u32, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(conductor, nvars);
        p.terms.insert(e, CycloNum::one(conductor));
        p
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &CycloNum)> {
        self.terms.iter()
    }

    pub fn to_terms(&self) -> Vec<PolyTerm> {
        self.terms.iter().map(|(e, c)| PolyTerm { coefficient: c.clone(), exponents: e.clone() }).collect()
    }

    fn add_term(&mut self, e: Vec<i32>, c: &CycloNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(), ..self.clone() }
    }

    pub fn scale(&self, f: &CycloNum) -> Poly {
        if f.is_zero() {
            return Poly::zero(self.conductor, self.nvars);
        }
        Poly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * f)).collect(), ..self.clone() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.conductor, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, CycloNum::one(self.conductor));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The constant value, if no unknown occurs.
    pub fn as_constant(&self) -> Option<CycloNum> {
        match self.terms.len() {
            0 => Some(CycloNum::zero(self.conductor)),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    /// `(exponents, coefficient)` for a single term.
    pub fn as_monomial(&self) -> Option<(&Vec<i32>, &CycloNum)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for e in self.terms.keys() {
            out.extend(e.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, _)| i));
        }
        out
    }

    pub fn degree_in(&self, i: usize) -> i32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn min_degree_in(&self, i: usize) -> i32 {
        self.terms.keys().map(|e| e[i]).min().unwrap_or(0)
    }

    /// Replaces unknown `i` by a polynomial. Negative powers of `i` need
    /// `value` to be a single term; returns `None` otherwise.
    pub fn try_substitute(&self, i: usize, value: &Poly) -> Option<Poly> {
        if self.terms.keys().all(|e| e[i] == 0) {
            return Some(self.clone());
        }
        let inverse = if self.min_degree_in(i) < 0 { Some(value.inverse_monomial()?) } else { None };
        let one = Poly::constant(self.nvars, CycloNum::one(self.conductor));
        let mut pos = vec![one.clone()];
        let mut neg = vec![one];
        let mut out = Poly::zero(self.conductor, self.nvars);
        for (e, c) in &self.terms {
            let k = e[i];
            let (table, base) = if k >= 0 { (&mut pos, value) } else { (&mut neg, inverse.as_ref().unwrap()) };
            while table.len() <= k.unsigned_abs() as usize {
                let next = table.last().unwrap().mul(base);
                table.push(next);
            }
            let mut rest = e.clone();
            rest[i] = 0;
            let mut mono = Poly::zero(self.conductor, self.nvars);
            mono.terms.insert(rest, c.clone());
            out = out.add(&mono.mul(&table[k.unsigned_abs() as usize]));
        }
        Some(out)
    }

    pub fn substitute_value(&self, i: usize, value: &CycloNum) -> Poly {
        if value.is_zero() {
            assert!(self.min_degree_in(i) >= 0, "negative power of an unknown set to zero");
        }
        let v = Poly::constant(self.nvars, value.clone());
        if value.is_zero() {
            // Only the terms free of the unknown survive.
            let mut out = Poly::zero(self.conductor, self.nvars);
            for (e, c) in &self.terms {
                if e[i] == 0 {
                    out.add_term(e.clone(), c);
                }
            }
            return out;
        }
        self.try_substitute(i, &v).expect("nonzero constants are invertible")
    }

    /// `1 / self` for a single nonzero term.
    pub fn inverse_monomial(&self) -> Option<Poly> {
        let (e, c) = self.as_monomial()?;
        let mut out = Poly::zero(self.conductor, self.nvars);
        out.terms.insert(e.iter().map(|x| -x).collect(), c.inverse().ok()?);
        Some(out)
    }

    /// Value at a full assignment; unknowns with negative powers must be nonzero.
    pub fn eval(&self, values: &[CycloNum]) -> CycloNum {
        let mut acc = CycloNum::zero(self.conductor);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k != 0 {
                    t = &t * &values[i].pow(k as i64).expect("negative power of zero");
                }
            }
            acc += &t;
        }
        acc
    }

    /// Multiplies by the monomial making every exponent nonnegative and the
    /// result indivisible by any unknown. Only meaningful when all unknowns
    /// involved are nonzero.
    pub fn strip_content(&self) -> Poly {
        if self.terms.is_empty() {
            return self.clone();
        }
        let mut m = vec![i32::MAX; self.nvars];
        for e in self.terms.keys() {
            for (a, b) in m.iter_mut().zip(e) {
                *a = (*a).min(*b);
            }
        }
        if m.iter().all(|&x| x == 0) {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.iter().zip(&m).map(|(a, b)| a - b).collect(), c.clone())).collect(),
            ..self.clone()
        }
    }

    /// Scales so the coefficient of the largest monomial is 1.
    pub fn monic(&self) -> Poly {
        match self.terms.iter().next_back() {
            Some((_, c)) => self.scale(&c.inverse().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// For a polynomial in `θ_i` alone with nonnegative exponents, its
    /// coefficients from degree 0 up.
    pub fn univariate(&self, i: usize) -> Option<Vec<CycloNum>> {
        let vars = self.vars();
        if vars.len() != 1 || !vars.contains(&i) || self.min_degree_in(i) < 0 {
            return None;
        }
        let mut out = vec![CycloNum::zero(self.conductor); self.degree_in(i) as usize + 1];
        for (e, c) in &self.terms {
            out[e[i] as usize] = c.clone();
        }
        Some(out)
    }

    pub fn from_univariate(nvars: usize, i: usize, coeffs: &[CycloNum]) -> Poly {
        let conductor = coeffs[0].conductor();
        let mut out = Poly::zero(conductor, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[i] = k as i32;
            out.add_term(e, c);
        }
        out
    }

    /// Rewrites powers of `θ_i` modulo the monic `minpoly` (nonzero constant
    /// term), so every exponent of `θ_i` ends up in `0..deg`.
    pub fn reduce_mod(&self, i: usize, minpoly: &[CycloNum]) -> Poly {
        let d = minpoly.len() - 1;
        if self.terms.keys().all(|e| e[i] >= 0 && (e[i] as usize) < d) {
            return self.clone();
        }
        let conductor = self.conductor;
        // θ^d = -Σ_{j<d} c_j θ^j and θ^{-1} = -(θ^{d-1} + … + c_1) / c_0.
        let top: Vec<CycloNum> = minpoly[..d].iter().map(|c| -c).collect();
        let c0inv = minpoly[0].inverse().expect("minimal polynomial with zero root");
        let inv: Vec<CycloNum> = (0..d).map(|j| -&(&minpoly[j + 1] * &c0inv)).collect();
        let mulx = |v: &[CycloNum]| -> Vec<CycloNum> {
            let mut out = vec![CycloNum::zero(conductor); d];
            for (j, c) in v.iter().enumerate() {
                if j + 1 < d {
                    out[j + 1] += c;
                } else {
                    for (k, t) in top.iter().enumerate() {
                        out[k] += &(c * t);
                    }
                }
            }
            out
        };
        let mul_inv = |v: &[CycloNum]| -> Vec<CycloNum> {
            let mut out = vec![CycloNum::zero(conductor); d];
            for (j, c) in v.iter().enumerate() {
                if j > 0 {
                    out[j - 1] += c;
                } else {
                    for (k, t) in inv.iter().enumerate() {
                        out[k] += &(c * t);
                    }
                }
            }
            out
        };
        let mut out = Poly::zero(conductor, self.nvars);
        for (e, c) in &self.terms {
            let mut v = vec![CycloNum::zero(conductor); d];
            v[0] = CycloNum::one(conductor);
            for _ in 0..e[i].max(0) {
                v = mulx(&v);
            }
            for _ in 0..(-e[i]).max(0) {
                v = mul_inv(&v);
            }
            for (j, a) in v.iter().enumerate() {
                if !a.is_zero() {
                    let mut f = e.clone();
                    f[i] = j as i32;
                    out.add_term(f, &(c * a));
                }
            }
        }
        out
    }

    /// `(a, b)` with `self = a·θ_i + b` when `θ_i` occurs only to the first power.
    pub fn linear_in(&self, i: usize) -> Option<(Poly, Poly)> {
        if self.degree_in(i) != 1 || self.min_degree_in(i) < 0 {
            return None;
        }
        let mut a = Poly::zero(self.conductor, self.nvars);
        let mut b = Poly::zero(self.conductor, self.nvars);
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[i] = 0;
            if e[i] == 1 {
                a.add_term(rest, c);
            } else {
                b.add_term(rest, c);
            }
        }
        Some((a, b))
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| if *x == 1 { names[i].clone() } else { format!("{}^{x}", names[i]) })
                .collect();
            let coeff = c.to_string();
            let compound = coeff.contains(' ');
            let (neg, body) = if !compound && coeff.starts_with('-') { (true, coeff[1..].to_string()) } else { (false, coeff) };
            let body = if compound { format!("({body})") } else { body };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&body);
            } else {
                if body != "1" {
                    out.push_str(&body);
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }
}

fn trim(p: &mut Vec<CycloNum>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn udegree(p: &[CycloNum]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Remainder of `a` modulo `b` (b nonzero).
fn urem(a: &[CycloNum], b: &[CycloNum]) -> Vec<CycloNum> {
    let db = udegree(b).expect("nonzero divisor");
    let lead = b[db].inverse().expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    while let Some(dr) = udegree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] * &lead;
        for (k, c) in b.iter().enumerate().take(db + 1) {
            let t = &f * c;
            r[dr - db + k] -= &t;
        }
    }
    trim(&mut r);
    r
}

/// Quotient of `a` by `b` when the division is exact.
pub(crate) fn udiv_exact(a: &[CycloNum], b: &[CycloNum]) -> Vec<CycloNum> {
    let db = udegree(b).expect("nonzero divisor");
    let lead = b[db].inverse().expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    let da = udegree(&r).unwrap_or(0);
    let mut q = vec![CycloNum::zero(b[0].conductor()); da.saturating_sub(db) + 1];
    while let Some(dr) = udegree(&r) {
        if dr < db {
            break;
        }
        let f = &r[dr] * &lead;
        for (k, c) in b.iter().enumerate().take(db + 1) {
            let t = &f * c;
            r[dr - db + k] -= &t;
        }
        q[dr - db] = f;
    }
    q
}

pub(crate) fn umonic(p: &[CycloNum]) -> Vec<CycloNum> {
    let d = udegree(p).expect("nonzero polynomial");
    let inv = p[d].inverse().expect("nonzero leading coefficient");
    p[..=d].iter().map(|c| c * &inv).collect()
}

pub(crate) fn ugcd(a: &[CycloNum], b: &[CycloNum]) -> Vec<CycloNum> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while udegree(&b).is_some() {
        let r = urem(&a, &b);
        a = b;
        b = r;
    }
    umonic(&a)
}

pub(crate) fn ueval(p: &[CycloNum], x: &CycloNum) -> CycloNum {
    let mut acc = CycloNum::zero(x.conductor());
    for c in p.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

/// The roots of unity lying in `Q(ζ_M)`: `±ζ_M^j`.
pub(crate) fn roots_of_unity_in_field(conductor: u32) -> Vec<CycloNum> {
    let order = if conductor.is_multiple_of(2) { conductor } else { 2 * conductor };
    let mut out = Vec::with_capacity(order as usize);
    for j in 0..conductor as i64 {
        out.push(CycloNum::root_of_unity(conductor, j));
    }
    if conductor % 2 == 1 {
        for j in 0..conductor as i64 {
            out.push(-CycloNum::root_of_unity(conductor, j));
        }
    }
    out
}

/// Splits off the roots of `p` that are roots of unity; returns the distinct
/// roots found and the remaining factor.
pub(crate) fn split_roots_of_unity(p: &[CycloNum]) -> (Vec<CycloNum>, Vec<CycloNum>) {
    let conductor = p[0].conductor();
    let mut rest = umonic(p);
    let mut roots = Vec::new();
    for r in roots_of_unity_in_field(conductor) {
        let mut found = false;
        while udegree(&rest).unwrap_or(0) > 0 && ueval(&rest, &r).is_zero() {
            let lin = vec![-&r, CycloNum::one(conductor)];
            rest = udiv_exact(&rest, &lin);
            found = true;
        }
        if found {
            roots.push(r);
        }
    }
    (roots, rest)
}

/// Small elements `Σ a_j ζ^j` with `|a_j| ≤ bound` in the power basis; used
/// to look for roots outside the roots of unity.
pub(crate) fn small_elements(conductor: u32, degree: usize, bound: i64) -> Vec<CycloNum> {
    let width = (2 * bound + 1) as usize;
    let total = width.pow(degree as u32);
    let mut out = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut acc = CycloNum::zero(conductor);
        for j in 0..degree {
            let a = (idx % width) as i64 - bound;
            idx /= width;
            if a != 0 {
                acc += &(&CycloNum::from_int(conductor, a) * &CycloNum::root_of_unity(conductor, j as i64));
            }
        }
        out.push(acc);
    }
    out
}

/// Exponent `d` in `0..n` with `λ^d = μ`, for `λ` of order `n`.
pub(crate) fn discrete_log(lambda: &CycloNum, mu: &CycloNum, n: u32) -> Option<u32> {
    let mut acc = CycloNum::one(lambda.conductor());
    for d in 0..n {
        if &acc == mu {
            return Some(d);
        }
        acc = &acc * lambda;
    }
    None
}

pub(crate) fn is_primitive_root(lambda: &CycloNum, n: u32) -> bool {
    lambda.order_of() == Some(n) || (n == 1 && lambda.is_one())
}

#[allow(dead_code)]
pub(crate) fn coprime(a: u32, b: u32) -> bool {
    gcd(a as u64, b as u64) == 1
}
