//! Bilinear pairings `⟨ , ⟩ : K × H → k` determined by their values on
//! generators, with checks of the duality axioms and of perfectness.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::catalog::Family;
use crate::cyclotomic::{bracket_factorial, CycloNum};
use crate::hopf::{AxiomCheck, HopfElement, HopfError, Mono, PresentedHopfAlgebra, Vector};
use crate::linalg::Matrix;

/// Above this dimension the product axioms are checked on sampled triples.
const EXHAUSTIVE_DIM: usize = 64;
const SAMPLED_TRIPLES: usize = 4096;
const MAX_REPORTED: usize = 5;

#[derive(Default)]
struct Memo {
    values: HashMap<(Mono, Mono), CycloNum>,
    busy: HashSet<(Mono, Mono)>,
}

/// A pairing between `K` (the dual side) and `H`.
pub struct DualityPairing {
    left: Arc<PresentedHopfAlgebra>,
    right: Arc<PresentedHopfAlgebra>,
    /// `table[l * h_gens + h]` is `⟨K-generator l, H-generator h⟩`.
    table: Vec<CycloNum>,
    memo: Mutex<Memo>,
    gram: OnceLock<Result<Matrix, HopfError>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub left: String,
    pub right: String,
    pub checks: Vec<AxiomCheck>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Perfectness {
    pub size: (usize, usize),
    pub rank: usize,
    pub determinant: Option<CycloNum>,
    pub perfect: bool,
}

fn summarize(name: &str, checked: usize, failures: Vec<String>) -> AxiomCheck {
    let total = failures.len();
    let mut shown: Vec<String> = failures.into_iter().take(MAX_REPORTED).collect();
    if total > MAX_REPORTED {
        shown.push(format!("... {} more", total - MAX_REPORTED));
    }
    AxiomCheck { name: name.to_string(), passed: total == 0, checked, failures: shown }
}

impl DualityPairing {
    /// `table` lists `(K-generator, H-generator, value)`; unlisted pairs are zero.
    pub fn new(
        left: Arc<PresentedHopfAlgebra>,
        right: Arc<PresentedHopfAlgebra>,
        table: &[(String, String, CycloNum)],
    ) -> Result<Self, HopfError> {
        let c = right.conductor();
        if left.conductor() != c {
            return Err(HopfError::Invalid(format!(
                "conductor mismatch: {} is over Q(ζ_{}), {} over Q(ζ_{c})",
                left.name(),
                left.conductor(),
                right.name()
            )));
        }
        let hk = right.num_generators();
        let mut values = vec![CycloNum::zero(c); left.num_generators() * hk];
        for (kname, hname, v) in table {
            let l = left
                .generator_index(kname)
                .ok_or_else(|| HopfError::Invalid(format!("{kname:?} is not a generator of {}", left.name())))?;
            let h = right
                .generator_index(hname)
                .ok_or_else(|| HopfError::Invalid(format!("{hname:?} is not a generator of {}", right.name())))?;
            if v.conductor() != c {
                return Err(HopfError::Invalid("pairing value over another field".into()));
            }
            values[l * hk + h] = v.clone();
        }
        Ok(DualityPairing { left, right, table: values, memo: Mutex::new(Memo::default()), gram: OnceLock::new() })
    }

    /// The pairing between a catalog algebra and its dual.
    pub fn for_family(family: &Family) -> Result<Self, HopfError> {
        let data = family.dual_data()?;
        Self::new(Arc::new(data.dual), Arc::new(data.algebra), &data.table)
    }

    pub fn left(&self) -> &Arc<PresentedHopfAlgebra> {
        &self.left
    }

    pub fn right(&self) -> &Arc<PresentedHopfAlgebra> {
        &self.right
    }

    fn eval(&self, memo: &mut Memo, u: Mono, x: Mono) -> Result<CycloNum, HopfError> {
        if u == 0 {
            return Ok(self.right.counit_mono(x));
        }
        if x == 0 {
            return Ok(self.left.counit_mono(u));
        }
        if let Some(v) = memo.values.get(&(u, x)) {
            return Ok(v.clone());
        }
        if !memo.busy.insert((u, x)) {
            return Err(HopfError::NonTermination(format!(
                "pairing of {} with {} depends on itself",
                self.left.format_mono(u),
                self.right.format_mono(x)
            )));
        }
        let ul = self.left.letters(u);
        let xl = self.right.letters(x);
        let mut acc = CycloNum::zero(self.right.conductor());
        if xl.len() == 1 && ul.len() == 1 {
            acc = self.table[ul[0] * self.right.num_generators() + xl[0]].clone();
        } else if xl.len() == 1 {
            // ⟨u' l, h⟩ = Σ ⟨u', h₁⟩⟨l, h₂⟩
            let l = *ul.last().expect("non-identity");
            let prefix = self.left.monomial(&{
                let mut e = self.left.exponents(u);
                e[l] -= 1;
                e
            });
            let lm = self.left.generator_monomial(l);
            let lm = *lm.keys().next().expect("generator with bound above one");
            for ((h1, h2), c) in self.right.delta_mono(x) {
                let a = self.eval(memo, prefix, *h1)?;
                if a.is_zero() {
                    continue;
                }
                let b = self.eval(memo, lm, *h2)?;
                acc += &(c * &(&a * &b));
            }
        } else {
            // ⟨u, x' h⟩ = Σ ⟨u₁, x'⟩⟨u₂, h⟩
            let h = *xl.last().expect("non-identity");
            let mut e = self.right.exponents(x);
            e[h] -= 1;
            let prefix = self.right.monomial(&e);
            let hm = *self.right.generator_monomial(h).keys().next().expect("generator with bound above one");
            for ((u1, u2), c) in self.left.delta_mono(u) {
                let b = self.eval(memo, *u2, hm)?;
                if b.is_zero() {
                    continue;
                }
                let a = self.eval(memo, *u1, prefix)?;
                acc += &(c * &(&a * &b));
            }
        }
        memo.busy.remove(&(u, x));
        memo.values.insert((u, x), acc.clone());
        Ok(acc)
    }

    /// `⟨u, x⟩` on basis monomials.
    pub fn pair_mono(&self, u: Mono, x: Mono) -> Result<CycloNum, HopfError> {
        if (u as usize) >= self.left.dimension() || (x as usize) >= self.right.dimension() {
            return Err(HopfError::Invalid("monomial out of range".into()));
        }
        if let Some(Ok(g)) = self.gram.get() {
            return Ok(g[(u as usize, x as usize)].clone());
        }
        let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
        let result = self.eval(&mut memo, u, x);
        if result.is_err() {
            memo.busy.clear();
        }
        result
    }

    pub fn pair(&self, u: &Vector, x: &Vector) -> Result<CycloNum, HopfError> {
        let mut acc = CycloNum::zero(self.right.conductor());
        for (a, c) in u {
            for (b, d) in x {
                acc += &(&(c * d) * &self.pair_mono(*a, *b)?);
            }
        }
        Ok(acc)
    }

    /// `⟨u, x⟩` for elements of `K` and `H`.
    pub fn pair_elements(&self, u: &HopfElement, x: &HopfElement) -> Result<CycloNum, HopfError> {
        if u.algebra().id() != self.left.id() || x.algebra().id() != self.right.id() {
            return Err(HopfError::OwnerMismatch);
        }
        self.pair(u.vector(), x.vector())
    }

    /// `G[u][x] = ⟨u, x⟩` over the two normal bases.
    pub fn gram_matrix(&self) -> Result<&Matrix, HopfError> {
        self.gram
            .get_or_init(|| {
                let (r, c) = (self.left.dimension(), self.right.dimension());
                let mut m = Matrix::zeros(self.right.conductor(), r, c);
                let mut memo = self.memo.lock().unwrap_or_else(|e| e.into_inner());
                for u in 0..r {
                    for x in 0..c {
                        m[(u, x)] = self.eval(&mut memo, u as Mono, x as Mono)?;
                    }
                }
                memo.values = HashMap::new();
                Ok(m)
            })
            .as_ref()
            .map_err(|e| e.clone())
    }

    pub fn perfectness(&self) -> Result<Perfectness, HopfError> {
        let g = self.gram_matrix()?;
        let size = (g.rows(), g.cols());
        let rank = g.rank();
        if size.0 != size.1 {
            return Ok(Perfectness { size, rank, determinant: None, perfect: false });
        }
        let det = g.determinant()?;
        let perfect = !det.is_zero();
        Ok(Perfectness { size, rank, determinant: Some(det), perfect })
    }

    /// Whether the Gram matrix is square and invertible.
    pub fn is_perfect(&self) -> Result<bool, HopfError> {
        Ok(self.perfectness()?.perfect)
    }

    fn triples(&self, seed: u64, da: usize, db: usize, dc: usize) -> Vec<(Mono, Mono, Mono)> {
        if da.max(db).max(dc) <= EXHAUSTIVE_DIM {
            let mut out = Vec::with_capacity(da * db * dc);
            for a in 0..da {
                for b in 0..db {
                    for c in 0..dc {
                        out.push((a as Mono, b as Mono, c as Mono));
                    }
                }
            }
            return out;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..SAMPLED_TRIPLES)
            .map(|_| (rng.gen_range(0..da) as Mono, rng.gen_range(0..db) as Mono, rng.gen_range(0..dc) as Mono))
            .collect()
    }

    /// Checks `⟨uv, x⟩ = ⟨u, x₁⟩⟨v, x₂⟩`, `⟨u, xy⟩ = ⟨u₁, x⟩⟨u₂, y⟩`,
    /// `⟨1, x⟩ = ε(x)`, `⟨u, 1⟩ = ε(u)` and `⟨S(u), x⟩ = ⟨u, S(x)⟩`, on all
    /// basis pairs (products on sampled triples for large algebras).
    pub fn verify_duality_axioms(&self, seed: u64) -> Result<DualityReport, HopfError> {
        let g = self.gram_matrix()?;
        let (k, h) = (&*self.left, &*self.right);
        let (dk, dh) = (k.dimension(), h.dimension());
        let pv = |u: &Vector, x: Mono| -> CycloNum {
            let mut acc = CycloNum::zero(h.conductor());
            for (m, c) in u {
                acc += &(c * &g[(*m as usize, x as usize)]);
            }
            acc
        };
        let vp = |u: Mono, x: &Vector| -> CycloNum {
            let mut acc = CycloNum::zero(h.conductor());
            for (m, c) in x {
                acc += &(c * &g[(u as usize, *m as usize)]);
            }
            acc
        };

        let mut failures = Vec::new();
        let triples = self.triples(seed, dk, dk, dh);
        for &(u, v, x) in &triples {
            let lhs = pv(&k.mono_mul(u, v), x);
            let mut rhs = CycloNum::zero(h.conductor());
            for ((x1, x2), c) in h.delta_mono(x) {
                rhs += &(c * &(&g[(u as usize, *x1 as usize)] * &g[(v as usize, *x2 as usize)]));
            }
            if lhs != rhs {
                failures.push(format!("⟨{} · {}, {}⟩", k.format_mono(u), k.format_mono(v), h.format_mono(x)));
            }
        }
        let products_left = summarize("product in K", triples.len(), failures);

        let mut failures = Vec::new();
        let triples = self.triples(seed.wrapping_add(1), dk, dh, dh);
        for &(u, x, y) in &triples {
            let lhs = vp(u, &h.mono_mul(x, y));
            let mut rhs = CycloNum::zero(h.conductor());
            for ((u1, u2), c) in k.delta_mono(u) {
                rhs += &(c * &(&g[(*u1 as usize, x as usize)] * &g[(*u2 as usize, y as usize)]));
            }
            if lhs != rhs {
                failures.push(format!("⟨{}, {} · {}⟩", k.format_mono(u), h.format_mono(x), h.format_mono(y)));
            }
        }
        let products_right = summarize("product in H", triples.len(), failures);

        let failures = (0..dh)
            .filter(|&x| g[(0, x)] != h.counit_mono(x as Mono))
            .map(|x| format!("⟨1, {}⟩", h.format_mono(x as Mono)))
            .collect();
        let unit_left = summarize("unit of K", dh, failures);
        let failures = (0..dk)
            .filter(|&u| g[(u, 0)] != k.counit_mono(u as Mono))
            .map(|u| format!("⟨{}, 1⟩", k.format_mono(u as Mono)))
            .collect();
        let unit_right = summarize("unit of H", dk, failures);

        let mut failures = Vec::new();
        for u in 0..dk as Mono {
            let su = k.antipode_mono(u);
            for x in 0..dh as Mono {
                if pv(su, x) != vp(u, h.antipode_mono(x)) {
                    failures.push(format!("⟨S({}), {}⟩", k.format_mono(u), h.format_mono(x)));
                }
            }
        }
        let antipode = summarize("antipode", dk * dh, failures);

        Ok(DualityReport {
            left: k.name().to_string(),
            right: h.name().to_string(),
            checks: vec![products_left, products_right, unit_left, unit_right, antipode],
        })
    }
}

/// Outcome of the two dual-basis identities for `O_q(SL2)-bar` against
/// `u_q(sl2)`.
#[derive(Clone, Debug, Serialize)]
pub struct DualBasisReport {
    pub n: u32,
    pub expansion: AxiomCheck,
    pub inversion: AxiomCheck,
}

impl DualBasisReport {
    pub fn passed(&self) -> bool {
        self.expansion.passed && self.inversion.passed
    }
}

/// Checks, as functionals on every `E^i F^j K^l`,
/// `B^s C^t D^r = [s]![t]! Σ_l q^{-l(r+s-t)-rs} p_{s,t,l}` and
/// `n [s]![t]! p_{s,t,k} = Σ_r q^{(k+s)r+(s-t)k} B^s C^t D^r`, where
/// `p_{s,t,l}` is the functional dual to `E^s F^t K^l`.
pub fn dual_basis_identities(n: u32, k: u32) -> Result<DualBasisReport, HopfError> {
    let pairing = DualityPairing::for_family(&Family::Uq { n, k })?;
    let (o, u) = (pairing.left().clone(), pairing.right().clone());
    let g = pairing.gram_matrix()?;
    let q = CycloNum::root_of_unity(n, k as i64);
    let qp = |e: i64| q.pow(e).expect("q is a unit");
    let nn = n as i64;
    let bcd = |s: u32, t: u32, r: u32| o.monomial(&[s, t, r]) as usize;
    let efk = |i: u32, j: u32, l: u32| u.monomial(&[i, j, l]) as usize;
    let zero = CycloNum::zero(n);

    let mut failures = Vec::new();
    let mut checked = 0;
    for s in 0..n {
        for t in 0..n {
            let fact = &bracket_factorial(s, &q)? * &bracket_factorial(t, &q)?;
            for r in 0..n {
                for (i, j, l) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |l| (i, j, l)))) {
                    let (si, ti, ri, li) = (s as i64, t as i64, r as i64, l as i64);
                    let expected = if i == s && j == t { &fact * &qp(-li * (ri + si - ti) - ri * si) } else { zero.clone() };
                    checked += 1;
                    if g[(bcd(s, t, r), efk(i, j, l))] != expected {
                        failures.push(format!("B^{s} C^{t} D^{r} on E^{i} F^{j} K^{l}"));
                    }
                }
            }
        }
    }
    let expansion = summarize("dual basis expansion", checked, failures);

    let mut failures = Vec::new();
    let mut checked = 0;
    for s in 0..n {
        for t in 0..n {
            let fact = &bracket_factorial(s, &q)? * &bracket_factorial(t, &q)?;
            let scaled = &CycloNum::from_int(n, nn) * &fact;
            for kk in 0..n {
                for (i, j, l) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |l| (i, j, l)))) {
                    let lhs = if (i, j, l) == (s, t, kk) { scaled.clone() } else { zero.clone() };
                    let mut rhs = zero.clone();
                    for r in 0..n {
                        let (si, ti, ri, ki) = (s as i64, t as i64, r as i64, kk as i64);
                        let coeff = qp((ki + si) * ri + (si - ti) * ki);
                        rhs += &(&coeff * &g[(bcd(s, t, r), efk(i, j, l))]);
                    }
                    checked += 1;
                    if lhs != rhs {
                        failures.push(format!("p_{{{s},{t},{kk}}} on E^{i} F^{j} K^{l}"));
                    }
                }
            }
        }
    }
    let inversion = summarize("dual basis inversion", checked, failures);
    Ok(DualBasisReport { n, expansion, inversion })
}
