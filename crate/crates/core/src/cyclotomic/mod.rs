//! Exact arithmetic in cyclotomic fields `Q(ζ_M)`.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{φ(M)-1}` with rational
//! coefficients, reduced modulo the cyclotomic polynomial `Φ_M`. Each value
//! carries its conductor; combining values of different conductors is an
//! error unless one of them is first moved with [`CycloNum::embed_to_conductor`].

mod qsymbols;
mod text;

pub use qsymbols::{
    bracket_factorial, bracket_int, q_binom, q_factorial, q_int, QSymbolTable,
};

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, OnceLock, RwLock};

use malachite_base::num::arithmetic::traits::Reciprocal;
use malachite_base::num::basic::traits::{One, Zero};
use malachite_q::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {from} does not divide {to}")]
    NotDividing { from: u32, to: u32 },
    #[error("invalid conductor {0}")]
    InvalidConductor(u32),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Reduction data for one conductor.
#[derive(Debug)]
pub struct Field {
    conductor: u32,
    phi: usize,
    /// `fold[k]` is `ζ^{φ+k}` written in the power basis.
    fold: Vec<Vec<Rational>>,
    powers: Vec<Vec<Rational>>,
}

impl Field {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn degree(&self) -> usize {
        self.phi
    }
}

fn poly_divide_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // Both monic; den has degree <= num.
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let mut quot = vec![0i64; num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn];
        quot[k] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

/// Integer coefficients of `Φ_m`, lowest degree first.
pub fn cyclotomic_polynomial(m: u32) -> Vec<i64> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().unwrap().get(&m) {
        return p.clone();
    }
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            p = poly_divide_exact(&p, &cyclotomic_polynomial(d));
        }
    }
    cache.write().unwrap().insert(m, p.clone());
    p
}

fn build_field(m: u32) -> Field {
    let phi_poly = cyclotomic_polynomial(m);
    let phi = phi_poly.len() - 1;
    // powers[k] = ζ^k for 0 <= k < m, by repeated multiplication by ζ
    let mut powers: Vec<Vec<Rational>> = Vec::with_capacity(m as usize);
    let mut row = vec![Rational::ZERO; phi];
    row[0] = Rational::ONE;
    for _ in 0..m {
        powers.push(row.clone());
        let top = row[phi - 1].clone();
        let mut next = vec![Rational::ZERO; phi];
        for i in (1..phi).rev() {
            next[i] = row[i - 1].clone();
        }
        if top != Rational::ZERO {
            for i in 0..phi {
                next[i] -= &top * Rational::from(phi_poly[i]);
            }
        }
        row = next;
    }
    let fold = (0..phi.saturating_sub(1)).map(|k| powers[(phi + k) % m as usize].clone()).collect();
    Field { conductor: m, phi, fold, powers }
}

/// Shared reduction data for conductor `m`.
pub fn field(m: u32) -> Result<Arc<Field>, CycloError> {
    if m == 0 {
        return Err(CycloError::InvalidConductor(m));
    }
    static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<Field>>>> = OnceLock::new();
    let fields = FIELDS.get_or_init(Default::default);
    if let Some(f) = fields.read().unwrap().get(&m) {
        return Ok(f.clone());
    }
    let f = Arc::new(build_field(m));
    fields.write().unwrap().entry(m).or_insert(f.clone());
    Ok(f)
}

/// Euler's totient, the degree of `Q(ζ_m)`.
pub fn totient(m: u32) -> usize {
    (1..=m).filter(|&k| gcd(k as u64, m as u64) == 1).count()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// An element of `Q(ζ_M)`.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<Field>,
    coeffs: Vec<Rational>,
}

impl CycloNum {
    pub fn zero(conductor: u32) -> Self {
        let field = field(conductor).expect("conductor must be positive");
        let coeffs = vec![Rational::ZERO; field.phi];
        CycloNum { field, coeffs }
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_rational(conductor, Rational::ONE)
    }

    pub fn from_int(conductor: u32, v: i64) -> Self {
        Self::from_rational(conductor, Rational::from(v))
    }

    pub fn from_rational(conductor: u32, v: Rational) -> Self {
        let mut z = Self::zero(conductor);
        z.coeffs[0] = v;
        z
    }

    pub fn from_fraction(conductor: u32, num: i64, den: i64) -> Result<Self, CycloError> {
        if den == 0 {
            return Err(CycloError::DivisionByZero);
        }
        Ok(Self::from_rational(conductor, Rational::from_signeds(num, den)))
    }

    /// Builds `Σ coeffs[i] ζ^i`; any length is accepted and reduced.
    pub fn from_coeffs(conductor: u32, coeffs: Vec<Rational>) -> Result<Self, CycloError> {
        let field = field(conductor)?;
        let phi = field.phi;
        let mut out = vec![Rational::ZERO; phi];
        for (i, c) in coeffs.into_iter().enumerate() {
            if c == Rational::ZERO {
                continue;
            }
            if i < phi {
                out[i] += c;
            } else {
                let z = Self::root_of_unity(conductor, i as i64);
                for (o, r) in out.iter_mut().zip(&z.coeffs) {
                    *o += &c * r;
                }
            }
        }
        Ok(CycloNum { field, coeffs: out })
    }

    /// `ζ_M^k`, with `ζ_M = exp(2πi/M)`.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        let field = field(conductor).expect("conductor must be positive");
        let coeffs = field.powers[k.rem_euclid(conductor as i64) as usize].clone();
        CycloNum { field, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Rational::ZERO)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == Rational::ONE && self.coeffs[1..].iter().all(|c| *c == Rational::ZERO)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| *c == Rational::ZERO) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check(&self, other: &Self) -> Result<(), CycloError> {
        if self.field.conductor != other.field.conductor {
            Err(CycloError::ConductorMismatch(self.field.conductor, other.field.conductor))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycloNum { field: self.field.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycloNum { field: self.field.clone(), coeffs })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let phi = self.field.phi;
        let mut prod = vec![Rational::ZERO; 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == Rational::ZERO {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if *b != Rational::ZERO {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<Rational> = prod.drain(..phi).collect();
        for (k, c) in prod.into_iter().enumerate() {
            if c == Rational::ZERO {
                continue;
            }
            for (o, r) in coeffs.iter_mut().zip(&self.field.fold[k]) {
                if *r != Rational::ZERO {
                    *o += &c * r;
                }
            }
        }
        CycloNum { field: self.field.clone(), coeffs }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        CycloNum { field: self.field.clone(), coeffs }
    }

    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.conductor(), r.clone().reciprocal()));
        }
        // Solve (multiplication by self) x = 1 over Q.
        let phi = self.field.phi;
        let m = self.conductor();
        let mut rows: Vec<Vec<Rational>> = vec![vec![Rational::ZERO; phi + 1]; phi];
        for j in 0..phi {
            let col = self.mul_unchecked(&Self::root_of_unity(m, j as i64));
            for i in 0..phi {
                rows[i][j] = col.coeffs[i].clone();
            }
        }
        rows[0][phi] = Rational::ONE;
        for c in 0..phi {
            let p = (c..phi).find(|&r| rows[r][c] != Rational::ZERO).ok_or(CycloError::DivisionByZero)?;
            rows.swap(c, p);
            let inv = rows[c][c].clone().reciprocal();
            for v in rows[c].iter_mut() {
                *v *= &inv;
            }
            let pivot = rows[c].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != c && row[c] != Rational::ZERO {
                    let f = row[c].clone();
                    for (v, p) in row.iter_mut().zip(&pivot) {
                        *v -= &f * p;
                    }
                }
            }
        }
        let coeffs = rows.into_iter().map(|r| r[phi].clone()).collect();
        Ok(CycloNum { field: self.field.clone(), coeffs })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, CycloError> {
        self.check(other)?;
        Ok(self.mul_unchecked(&other.inverse()?))
    }

    /// Integer power; negative exponents need an invertible base.
    pub fn pow(&self, e: i64) -> Result<Self, CycloError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.conductor());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(acc)
    }

    /// Multiplicative order if the element is a root of unity.
    pub fn order_of(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let l = lcm(2, self.conductor() as u64) as i64;
        if !self.pow(l).ok()?.is_one() {
            return None;
        }
        (1..=l).filter(|d| l % d == 0).find(|&d| self.pow(d).map(|v| v.is_one()).unwrap_or(false)).map(|d| d as u32)
    }

    /// Image under `Q(ζ_M) → Q(ζ_{M'})`, `ζ_M ↦ ζ_{M'}^{M'/M}`.
    pub fn embed_to_conductor(&self, target: u32) -> Result<Self, CycloError> {
        let m = self.conductor();
        if target == 0 || !target.is_multiple_of(m) {
            return Err(CycloError::NotDividing { from: m, to: target });
        }
        let step = (target / m) as usize;
        let mut coeffs = vec![Rational::ZERO; step * (self.coeffs.len().max(1) - 1) + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        Self::from_coeffs(target, coeffs)
    }

    /// Complex approximation, for display and sanity checks only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.conductor() as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.coeffs.iter().enumerate() {
            let v = rational_to_f64(c);
            let a = 2.0 * std::f64::consts::PI * k as f64 / m;
            re += v * a.cos();
            im += v * a.sin();
        }
        (re, im)
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_string()
        .split_once('/')
        .map(|(n, d)| n.parse::<f64>().unwrap_or(f64::NAN) / d.parse::<f64>().unwrap_or(f64::NAN))
        .unwrap_or_else(|| r.to_string().parse().unwrap_or(f64::NAN))
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [Q(z{})]", self, self.conductor())
    }
}

// Operator impls panic on mismatched conductors; use the `try_*` methods when
// the inputs are not known to share a field.
macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                self.$try(rhs).expect("cyclotomic arithmetic")
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$try(&rhs).expect("cyclotomic arithmetic")
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: &CycloNum) -> CycloNum {
                (&self).$try(rhs).expect("cyclotomic arithmetic")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&CycloNum> for CycloNum {
    fn add_assign(&mut self, rhs: &CycloNum) {
        assert_eq!(self.conductor(), rhs.conductor(), "cyclotomic arithmetic: conductor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if *b != Rational::ZERO {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CycloNum> for CycloNum {
    fn sub_assign(&mut self, rhs: &CycloNum) {
        assert_eq!(self.conductor(), rhs.conductor(), "cyclotomic arithmetic: conductor mismatch");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if *b != Rational::ZERO {
                *a -= b;
            }
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(mut self) -> CycloNum {
        for c in self.coeffs.iter_mut() {
            *c = -std::mem::replace(c, Rational::ZERO);
        }
        self
    }
}
