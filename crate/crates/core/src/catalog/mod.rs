//! Constructors for the Taft algebras, `H_n(ζ,m,t)`, the generalized Taft
//! algebras `T(n,N,α)`, `u_q(sl2)`, their duals, and the printed
//! presentations of their Drinfeld doubles.

mod families;
mod fixtures;

use std::fmt;
use std::str::FromStr;

use crate::cyclotomic::{gcd, CycloNum};
use crate::hopf::{HopfError, PresentedHopfAlgebra};

pub use families::{
    gen_taft, hnzmt, hnzmt_dual, oq_sl2_bar, sweedler, t421, t421_dual, taft, taft_dual, uqsl2,
};
pub use fixtures::{paper_double_presentation, DoubleFixture};

/// Data of `H_n(ζ,m,t)` with `ζ = ζ_n^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HnParams {
    pub n: u32,
    pub k: u32,
    pub m: u32,
    pub t: u32,
}

impl HnParams {
    /// Requires `ζ_n^k` primitive, `m | n`, `t | n` and `n ∤ mt`.
    pub fn new(n: u32, k: u32, m: u32, t: u32) -> Result<Self, HopfError> {
        if n < 2 {
            return Err(HopfError::Invalid(format!("H_n(ζ,m,t) needs n ≥ 2, got {n}")));
        }
        if gcd(k as u64, n as u64) != 1 {
            return Err(HopfError::Invalid(format!("ζ_{n}^{k} is not a primitive {n}-th root of unity")));
        }
        if m == 0 || t == 0 || !n.is_multiple_of(m) || !n.is_multiple_of(t) {
            return Err(HopfError::Invalid(format!("m = {m} and t = {t} must divide n = {n}")));
        }
        if (m as u64 * t as u64).is_multiple_of(n as u64) {
            return Err(HopfError::Invalid(format!("n = {n} divides mt = {}", m * t)));
        }
        Ok(HnParams { n, k: k % n, m, t })
    }

    pub fn zeta(&self) -> CycloNum {
        CycloNum::root_of_unity(self.n, self.k as i64)
    }

    /// `N = ord(ζ^{mt}) = n / gcd(n, mt)`.
    pub fn big_n(&self) -> u32 {
        self.n / gcd(self.n as u64, (self.m * self.t) as u64) as u32
    }

    /// `q = ζ^{mt}`.
    pub fn q(&self) -> CycloNum {
        CycloNum::root_of_unity(self.n, (self.k as i64) * (self.m * self.t) as i64)
    }

    /// Parameters of the dual, with `m` and `t` exchanged.
    pub fn dual(&self) -> HnParams {
        HnParams { m: self.t, t: self.m, ..*self }
    }

    pub fn label(&self) -> String {
        format!("H_{}(ζ_{}^{},{},{})", self.n, self.n, self.k, self.m, self.t)
    }
}

/// Whether `H_n(ζ,m,t) ≅ H_n(ζ̂,m̂,t̂)`; on success returns a unit `f` mod `n`
/// with `ζ̂^{ft} = ζ^t` and `fm ≡ m`.
pub fn hnzmt_isomorphic(p1: &HnParams, p2: &HnParams) -> Option<u32> {
    if p1.n != p2.n || p1.m != p2.m || p1.t != p2.t {
        return None;
    }
    let n = p1.n as u64;
    let (k1, k2, m, t) = (p1.k as u64, p2.k as u64, p1.m as u64, p1.t as u64);
    (1..n.max(2))
        .filter(|&f| gcd(f, n) == 1)
        .find(|&f| (k2 * f % n) * t % n == k1 * t % n && f * m % n == m % n)
        .map(|f| f as u32)
}

/// An algebra family with its parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `T_n(ζ_n^k)`.
    Taft { n: u32, k: u32 },
    Hnzmt(HnParams),
    /// `T(n,N,α)` with `q = ζ_n^{(n/N)k}`.
    GenTaft { n: u32, big_n: u32, alpha: u32, k: u32 },
    /// `T(4,2,1)` with the fourth root `ζ_4^k` fixing its dual.
    T421 { k: u32 },
    /// `u_q(sl2)` with `q = ζ_n^k`.
    Uq { n: u32, k: u32 },
}

/// An algebra from a family, or its dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraId {
    pub family: Family,
    pub dual: bool,
}

/// A grading `g · u = λu` of `k[u]/(u^n − 1)` by a grouplike generator.
#[derive(Clone, Debug, PartialEq)]
pub struct Grading {
    pub generator: String,
    pub eigenvalue: CycloNum,
    /// Order of the grouplike group, the degree of the target algebra.
    pub order: u32,
}

/// `H^*` together with `H` and the pairing `⟨k, h⟩` on pairs of generators
/// (pairs not listed pair to zero).
pub struct DualData {
    pub dual: PresentedHopfAlgebra,
    pub algebra: PresentedHopfAlgebra,
    pub table: Vec<(String, String, CycloNum)>,
}

fn num(s: &str, what: &str) -> Result<u32, HopfError> {
    s.parse().map_err(|_| HopfError::Parse(format!("{what} must be a non-negative integer, got {s:?}")))
}

impl FromStr for AlgebraId {
    type Err = HopfError;

    fn from_str(s: &str) -> Result<Self, HopfError> {
        let mut parts: Vec<&str> = s.trim().split(':').collect();
        let dual = parts.last() == Some(&"dual");
        if dual {
            parts.pop();
        }
        let bad = || HopfError::Parse(format!("unrecognized algebra id {s:?}"));
        let family = match parts.as_slice() {
            ["sweedler"] => Family::Taft { n: 2, k: 1 },
            ["taft", n, k] => Family::Taft { n: num(n, "n")?, k: num(k, "k")? },
            ["hnzmt", n, k, m, t] => Family::Hnzmt(HnParams::new(num(n, "n")?, num(k, "k")?, num(m, "m")?, num(t, "t")?)?),
            ["gentaft", n, big_n, alpha] => {
                Family::GenTaft { n: num(n, "n")?, big_n: num(big_n, "N")?, alpha: num(alpha, "alpha")?, k: 1 }
            }
            ["gentaft", n, big_n, alpha, k] => {
                Family::GenTaft { n: num(n, "n")?, big_n: num(big_n, "N")?, alpha: num(alpha, "alpha")?, k: num(k, "k")? }
            }
            ["t421", k] => Family::T421 { k: num(k, "k")? },
            ["uq", n, k] => Family::Uq { n: num(n, "n")?, k: num(k, "k")? },
            _ => return Err(bad()),
        };
        let id = AlgebraId { family, dual };
        id.build()?;
        Ok(id)
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Taft { n, k } => write!(f, "taft:{n}:{k}")?,
            Family::Hnzmt(p) => write!(f, "hnzmt:{}:{}:{}:{}", p.n, p.k, p.m, p.t)?,
            Family::GenTaft { n, big_n, alpha, k } => write!(f, "gentaft:{n}:{big_n}:{alpha}:{k}")?,
            Family::T421 { k } => write!(f, "t421:{k}")?,
            Family::Uq { n, k } => write!(f, "uq:{n}:{k}")?,
        }
        if self.dual {
            write!(f, ":dual")?;
        }
        Ok(())
    }
}

impl Family {
    pub fn build(&self) -> Result<PresentedHopfAlgebra, HopfError> {
        match *self {
            Family::Taft { n, k } => taft(n, k),
            Family::Hnzmt(p) => hnzmt(&p),
            Family::GenTaft { n, big_n, alpha, k } => gen_taft(n, big_n, alpha, k),
            Family::T421 { k } => t421(k),
            Family::Uq { n, k } => uqsl2(n, k),
        }
    }

    pub fn build_dual(&self) -> Result<PresentedHopfAlgebra, HopfError> {
        match *self {
            Family::Taft { n, k } => taft_dual(n, k),
            Family::Hnzmt(p) => hnzmt_dual(&p),
            Family::GenTaft { n, big_n, alpha: 0, k } => {
                let p = HnParams::new(n, k, 1, n / big_n)?;
                hnzmt_dual(&p)
            }
            Family::GenTaft { .. } => Err(HopfError::Invalid("duals of T(n,N,1) are only available for T(4,2,1)".into())),
            Family::T421 { k } => t421_dual(k),
            Family::Uq { n, k } => oq_sl2_bar(n, k),
        }
    }

    /// The dual with its evaluation pairing on generators.
    pub fn dual_data(&self) -> Result<DualData, HopfError> {
        let algebra = self.build()?;
        let dual = self.build_dual()?;
        let c = algebra.conductor();
        let one = CycloNum::one(c);
        let entry = |a: &str, b: &str, v: CycloNum| (a.to_string(), b.to_string(), v);
        let table = match *self {
            Family::Taft { n, k } => vec![entry("G", "g", CycloNum::root_of_unity(n, k as i64)), entry("X", "x", one)],
            Family::Hnzmt(p) => vec![entry("Y", "y", p.zeta()), entry("X", "x", one)],
            Family::GenTaft { n, k, .. } => vec![entry("Y", "g", CycloNum::root_of_unity(n, k as i64)), entry("X", "x", one)],
            Family::T421 { k } => vec![entry("G", "g", CycloNum::root_of_unity(4, k as i64)), entry("X", "x", one)],
            Family::Uq { n, k } => {
                let q = CycloNum::root_of_unity(n, k as i64);
                let zero = CycloNum::zero(c);
                // Matrix coefficients of the two-dimensional representation:
                // b, c, d are the (1,2), (2,1), (2,2) entries.
                let rho = [
                    ("E", [[zero.clone(), one.clone()], [zero.clone(), zero.clone()]]),
                    ("F", [[zero.clone(), zero.clone()], [one.clone(), zero.clone()]]),
                    ("K", [[q.clone(), zero.clone()], [zero.clone(), q.inverse()?]]),
                ];
                let mut table = Vec::new();
                for (kname, (i, j)) in [("b", (0, 1)), ("c", (1, 0)), ("d", (1, 1))] {
                    for (hname, m) in &rho {
                        if !m[i][j].is_zero() {
                            table.push(entry(kname, hname, m[i][j].clone()));
                        }
                    }
                }
                table
            }
        };
        Ok(DualData { dual, algebra, table })
    }

    /// The grading of `k[u]/(u^n − 1)` used for classifying actions.
    pub fn grading(&self) -> Grading {
        match *self {
            // With gx = qxg, x · u ∈ k1 needs g · u = q^{-1}u.
            Family::Taft { n, k } => Grading { generator: "g".into(), eigenvalue: CycloNum::root_of_unity(n, -(k as i64)), order: n },
            Family::Hnzmt(p) => Grading { generator: "y".into(), eigenvalue: p.zeta(), order: p.n },
            Family::GenTaft { n, k, .. } => Grading { generator: "g".into(), eigenvalue: CycloNum::root_of_unity(n, k as i64), order: n },
            Family::T421 { k } => Grading { generator: "g".into(), eigenvalue: CycloNum::root_of_unity(4, k as i64), order: 4 },
            Family::Uq { n, k } => Grading { generator: "K".into(), eigenvalue: CycloNum::root_of_unity(n, 2 * k as i64), order: n },
        }
    }
}

impl AlgebraId {
    pub fn build(&self) -> Result<PresentedHopfAlgebra, HopfError> {
        if self.dual {
            self.family.build_dual()
        } else {
            self.family.build()
        }
    }
}
