use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use crate::cyclotomic::CycloNum;

use super::expr::{parse_expr, parse_tensor, Expr, Scope, TensorExpr, Word};
use super::sparse::{outer, Mono, Tensor2, Tensor3, Vector};
use super::HopfError;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

const COMPILE_STACK: usize = 512 << 20;
const DEPTH_LIMIT: usize = 100_000;
const MAX_DIMENSION: u64 = 1 << 26;
const ANTIPODE_ORDER_LIMIT: usize = 256;

/// One generator with its truncation rule and coalgebra data.
///
/// `g^bound = power_image`; a generator without a power relation has
/// `power_image = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorSpec {
    pub name: String,
    pub bound: u32,
    pub power_image: Vector,
    pub delta: Tensor2,
    pub epsilon: CycloNum,
    pub antipode: Vector,
    /// Coproduct written over symbols (generators and defined symbols), when
    /// a shorter form than the normalized one is known.
    pub delta_words: Option<TensorExpr>,
}

/// Reordering rule `left · right = image` with `left > right`.
#[derive(Clone, Debug, PartialEq)]
pub struct SwapRule {
    pub left: usize,
    pub right: usize,
    pub image: Vector,
}

/// A named element used as a shorthand in coproducts and relations.
#[derive(Clone, Debug)]
pub struct DefinedSymbol {
    pub name: String,
    pub value: Vector,
    /// Coproduct over symbols; index `k + i` refers to defined symbol `i`.
    pub delta: TensorExpr,
}

type Letters = Vec<(CycloNum, Vec<usize>)>;

/// A Hopf algebra with PBW basis `x_1^{e_1} ⋯ x_k^{e_k}`, `0 ≤ e_i < bound_i`.
///
/// Monomials are numbered in mixed radix with the first generator most
/// significant, so the identity is monomial `0`. Multiplication is compiled
/// into a table of right products `m · x_g`.
pub struct PresentedHopfAlgebra {
    id: u64,
    name: String,
    conductor: u32,
    gens: Vec<GeneratorSpec>,
    swaps: Vec<SwapRule>,
    defined: Vec<DefinedSymbol>,
    expected_dim: Option<usize>,
    strides: Vec<u32>,
    dim: usize,
    table: Vec<Vector>,
    delta_cache: Vec<OnceLock<Tensor2>>,
    antipode_cache: Vec<OnceLock<Vector>>,
    antipode_inv_gens: OnceLock<Result<Vec<Vector>, HopfError>>,
    antipode_inv_cache: Vec<OnceLock<Vector>>,
}

impl fmt::Debug for PresentedHopfAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedHopfAlgebra")
            .field("name", &self.name)
            .field("conductor", &self.conductor)
            .field("generators", &self.gens.iter().map(|g| &g.name).collect::<Vec<_>>())
            .field("dimension", &self.dim)
            .finish()
    }
}

struct Compiler<'a> {
    conductor: u32,
    bounds: &'a [u32],
    strides: &'a [u32],
    power: &'a [Letters],
    swaps: &'a HashMap<(usize, usize), Letters>,
    table: Vec<Option<Rc<Vector>>>,
    busy: Vec<bool>,
}

impl Compiler<'_> {
    fn k(&self) -> usize {
        self.bounds.len()
    }

    fn entry(&mut self, m: Mono, g: usize, depth: usize) -> Result<Rc<Vector>, HopfError> {
        let k = self.k();
        let idx = m as usize * k + g;
        if let Some(v) = &self.table[idx] {
            return Ok(v.clone());
        }
        if self.busy[idx] {
            return Err(HopfError::NonTermination(format!("monomial {m} times generator {g} depends on itself")));
        }
        if depth > DEPTH_LIMIT {
            return Err(HopfError::NonTermination("rewriting depth limit exceeded".into()));
        }
        self.busy[idx] = true;
        let exps: Vec<u32> = (0..k).map(|i| (m / self.strides[i]) % self.bounds[i]).collect();
        let last = (0..k).rev().find(|&i| exps[i] > 0);
        let one = CycloNum::one(self.conductor);
        let result = match last {
            Some(h) if h > g => {
                let prefix = m - self.strides[h];
                let mut acc = Vector::new();
                match self.swaps.get(&(h, g)) {
                    Some(image) => {
                        for (c, letters) in image {
                            let v = self.mul_letters(prefix, letters, depth + 1)?;
                            acc.axpy(c, &v);
                        }
                    }
                    None => {
                        let v = self.mul_letters(prefix, &[g, h], depth + 1)?;
                        acc.axpy(&one, &v);
                    }
                }
                acc
            }
            _ => {
                if exps[g] + 1 < self.bounds[g] {
                    Vector::term(m + self.strides[g], one)
                } else {
                    let prefix = m - exps[g] * self.strides[g];
                    let mut acc = Vector::new();
                    for (c, letters) in &self.power[g] {
                        let v = self.mul_letters(prefix, letters, depth + 1)?;
                        acc.axpy(c, &v);
                    }
                    acc
                }
            }
        };
        self.busy[idx] = false;
        let rc = Rc::new(result);
        self.table[idx] = Some(rc.clone());
        Ok(rc)
    }

    fn mul_letters(&mut self, m: Mono, letters: &[usize], depth: usize) -> Result<Vector, HopfError> {
        let mut v = Vector::term(m, CycloNum::one(self.conductor));
        for &l in letters {
            let mut next = Vector::new();
            for (mm, c) in &v {
                let t = self.entry(*mm, l, depth)?;
                next.axpy(c, &t);
            }
            v = next;
        }
        Ok(v)
    }
}

fn compile(
    conductor: u32,
    bounds: &[u32],
    strides: &[u32],
    dim: usize,
    power: &[Letters],
    swaps: &HashMap<(usize, usize), Letters>,
) -> Result<Vec<Vector>, HopfError> {
    let k = bounds.len();
    std::thread::scope(|s| {
        let handle = std::thread::Builder::new()
            .stack_size(COMPILE_STACK)
            .spawn_scoped(s, || {
                let mut c = Compiler {
                    conductor,
                    bounds,
                    strides,
                    power,
                    swaps,
                    table: vec![None; dim * k],
                    busy: vec![false; dim * k],
                };
                for m in 0..dim as Mono {
                    for g in 0..k {
                        c.entry(m, g, 0)?;
                    }
                }
                Ok(c.table.into_iter().map(|v| Rc::try_unwrap(v.expect("filled")).unwrap_or_else(|rc| (*rc).clone())).collect())
            })
            .map_err(|e| HopfError::Invalid(format!("cannot start rewriting thread: {e}")))?;
        handle
            .join()
            .unwrap_or_else(|_| Err(HopfError::NonTermination("rewriting thread panicked".into())))
    })
}

fn letters_of(bounds: &[u32], strides: &[u32], m: Mono) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 0..bounds.len() {
        let e = (m / strides[i]) % bounds[i];
        out.extend(std::iter::repeat_n(i, e as usize));
    }
    out
}

impl PresentedHopfAlgebra {
    /// Compiles the multiplication from power and swap data. Coalgebra
    /// fields are filled with placeholders by the caller.
    fn assemble(
        name: &str,
        conductor: u32,
        names: Vec<String>,
        bounds: Vec<u32>,
        power: Vec<Letters>,
        swap_letters: BTreeMap<(usize, usize), Letters>,
        expected_dim: Option<usize>,
    ) -> Result<Self, HopfError> {
        let k = names.len();
        if bounds.contains(&0) {
            return Err(HopfError::Invalid("generator bounds must be positive".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(HopfError::Invalid(format!("duplicate generator name {n:?}")));
            }
        }
        let mut total: u64 = 1;
        for &b in &bounds {
            total = total.saturating_mul(b as u64);
            if total > MAX_DIMENSION {
                return Err(HopfError::Invalid(format!("dimension exceeds {MAX_DIMENSION}")));
            }
        }
        let dim = total as usize;
        let mut strides = vec![1u32; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * bounds[i + 1];
        }
        for &(l, r) in swap_letters.keys() {
            if l <= r || l >= k {
                return Err(HopfError::Invalid(format!("swap rule must reorder a later generator past an earlier one, got ({l}, {r})")));
            }
        }
        let swaps_map: HashMap<(usize, usize), Letters> = swap_letters.iter().map(|(k, v)| (*k, v.clone())).collect();
        let table = compile(conductor, &bounds, &strides, dim, &power, &swaps_map)?;
        let mut alg = PresentedHopfAlgebra {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.to_string(),
            conductor,
            gens: Vec::new(),
            swaps: Vec::new(),
            defined: Vec::new(),
            expected_dim,
            strides,
            dim,
            table,
            delta_cache: (0..dim).map(|_| OnceLock::new()).collect(),
            antipode_cache: (0..dim).map(|_| OnceLock::new()).collect(),
            antipode_inv_gens: OnceLock::new(),
            antipode_inv_cache: (0..dim).map(|_| OnceLock::new()).collect(),
        };
        alg.gens = names
            .into_iter()
            .zip(bounds)
            .map(|(n, b)| GeneratorSpec {
                name: n,
                bound: b,
                power_image: Vector::new(),
                delta: Tensor2::new(),
                epsilon: CycloNum::zero(conductor),
                antipode: Vector::new(),
                delta_words: None,
            })
            .collect();
        // Table lookups need the generator count, so images are evaluated
        // only once the generators are in place.
        let one = Vector::term(0, CycloNum::one(conductor));
        for (i, letters) in power.iter().enumerate() {
            let mut img = Vector::new();
            for (c, word) in letters {
                img.axpy(c, &alg.mul_letters(&one, word));
            }
            alg.gens[i].power_image = img;
        }
        for ((l, r), image) in &swap_letters {
            let mut img = Vector::new();
            for (c, letters) in image {
                img.axpy(c, &alg.mul_letters(&one, letters));
            }
            alg.swaps.push(SwapRule { left: *l, right: *r, image: img });
        }
        Ok(alg)
    }

    /// Builds an algebra from normalized generator data.
    pub fn from_specs(
        name: &str,
        conductor: u32,
        gens: Vec<GeneratorSpec>,
        swaps: Vec<SwapRule>,
        defined: Vec<DefinedSymbol>,
        expected_dim: Option<usize>,
    ) -> Result<Self, HopfError> {
        let bounds: Vec<u32> = gens.iter().map(|g| g.bound).collect();
        let k = bounds.len();
        let mut strides = vec![1u32; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1].saturating_mul(bounds[i + 1]);
        }
        let dim: u64 = bounds.iter().map(|&b| b as u64).product();
        let in_range = |v: &Vector| v.keys().all(|&m| (m as u64) < dim);
        let in_range2 = |t: &Tensor2| t.keys().all(|&(a, b)| (a as u64) < dim && (b as u64) < dim);
        let conductor_ok = |c: &CycloNum| c.conductor() == conductor;
        for g in &gens {
            if !in_range(&g.power_image) || !in_range(&g.antipode) || !in_range2(&g.delta) {
                return Err(HopfError::Invalid(format!("generator {:?} refers to a monomial out of range", g.name)));
            }
            let coeffs_ok = g.power_image.iter().all(|(_, c)| conductor_ok(c))
                && g.antipode.iter().all(|(_, c)| conductor_ok(c))
                && g.delta.iter().all(|(_, c)| conductor_ok(c))
                && conductor_ok(&g.epsilon);
            if !coeffs_ok {
                return Err(HopfError::Invalid(format!("generator {:?} has coefficients over another field", g.name)));
            }
        }
        let to_letters = |v: &Vector| -> Letters {
            v.iter().map(|(m, c)| (c.clone(), letters_of(&bounds, &strides, *m))).collect()
        };
        let power: Vec<Letters> = gens.iter().map(|g| to_letters(&g.power_image)).collect();
        let mut swap_letters = BTreeMap::new();
        for s in &swaps {
            if !in_range(&s.image) || !s.image.iter().all(|(_, c)| conductor_ok(c)) {
                return Err(HopfError::Invalid("swap image out of range".into()));
            }
            if swap_letters.insert((s.left, s.right), to_letters(&s.image)).is_some() {
                return Err(HopfError::Invalid(format!("duplicate swap rule ({}, {})", s.left, s.right)));
            }
        }
        let names = gens.iter().map(|g| g.name.clone()).collect();
        let mut alg = Self::assemble(name, conductor, names, bounds, power, swap_letters, expected_dim)?;
        for (slot, g) in alg.gens.iter_mut().zip(gens) {
            slot.delta = g.delta;
            slot.epsilon = g.epsilon;
            slot.antipode = g.antipode;
            slot.delta_words = g.delta_words;
        }
        for d in &defined {
            if !in_range(&d.value) {
                return Err(HopfError::Invalid(format!("defined symbol {:?} out of range", d.name)));
            }
        }
        alg.defined = defined;
        Ok(alg)
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn expected_dimension(&self) -> Option<usize> {
        self.expected_dim
    }

    pub fn num_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn generators(&self) -> &[GeneratorSpec] {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> &GeneratorSpec {
        &self.gens[i]
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn swaps(&self) -> &[SwapRule] {
        &self.swaps
    }

    pub fn defined_symbols(&self) -> &[DefinedSymbol] {
        &self.defined
    }

    /// Generator names followed by defined symbol names.
    pub fn symbol_names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).chain(self.defined.iter().map(|d| d.name.clone())).collect()
    }

    pub fn one(&self) -> Vector {
        Vector::term(0, CycloNum::one(self.conductor))
    }

    pub fn scalar(&self, c: CycloNum) -> Vector {
        Vector::term(0, c)
    }

    pub fn exponents(&self, m: Mono) -> Vec<u32> {
        (0..self.gens.len()).map(|i| (m / self.strides[i]) % self.gens[i].bound).collect()
    }

    pub fn monomial(&self, exps: &[u32]) -> Mono {
        exps.iter().zip(&self.strides).map(|(e, s)| e * s).sum()
    }

    /// The monomial `x_g`, or the identity if `bound = 1`.
    pub fn generator_monomial(&self, g: usize) -> Vector {
        self.mul_letters(&self.one(), &[g])
    }

    pub fn letters(&self, m: Mono) -> Vec<usize> {
        let bounds: Vec<u32> = self.gens.iter().map(|g| g.bound).collect();
        letters_of(&bounds, &self.strides, m)
    }

    pub fn degree(&self, m: Mono) -> u32 {
        self.exponents(m).iter().sum()
    }

    /// Whether `x_g^{bound} = 1`, so negative powers of `x_g` make sense.
    pub fn is_invertible_generator(&self, g: usize) -> bool {
        let p = &self.gens[g].power_image;
        p.len() == 1 && p.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn mul_gen_mono(&self, m: Mono, g: usize) -> &Vector {
        &self.table[m as usize * self.gens.len() + g]
    }

    pub fn mul_letters(&self, v: &Vector, letters: &[usize]) -> Vector {
        let mut v = v.clone();
        for &l in letters {
            let mut next = Vector::new();
            for (m, c) in &v {
                next.axpy(c, self.mul_gen_mono(*m, l));
            }
            v = next;
        }
        v
    }

    pub fn mono_mul(&self, a: Mono, b: Mono) -> Vector {
        self.mul_letters(&Vector::term(a, CycloNum::one(self.conductor)), &self.letters(b))
    }

    pub fn mul(&self, a: &Vector, b: &Vector) -> Vector {
        let mut acc = Vector::new();
        for (m, c) in b {
            let v = self.mul_letters(a, &self.letters(*m));
            acc.axpy(c, &v);
        }
        acc
    }

    pub fn pow(&self, a: &Vector, e: u32) -> Vector {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// Componentwise product in `A ⊗ A`.
    pub fn tensor_mul(&self, a: &Tensor2, b: &Tensor2) -> Tensor2 {
        let mut acc = Tensor2::new();
        let mut memo: HashMap<(Mono, Mono), Vector> = HashMap::new();
        for ((y1, y2), d) in b {
            for ((x1, x2), c) in a {
                let l = memo.entry((*x1, *y1)).or_insert_with(|| self.mono_mul(*x1, *y1)).clone();
                let r = memo.entry((*x2, *y2)).or_insert_with(|| self.mono_mul(*x2, *y2));
                outer(&l, r, &(c * d), &mut acc);
            }
        }
        acc
    }

    pub fn counit_mono(&self, m: Mono) -> CycloNum {
        let mut acc = CycloNum::one(self.conductor);
        for (i, e) in self.exponents(m).into_iter().enumerate() {
            for _ in 0..e {
                acc = &acc * &self.gens[i].epsilon;
            }
        }
        acc
    }

    pub fn counit(&self, v: &Vector) -> CycloNum {
        let mut acc = CycloNum::zero(self.conductor);
        for (m, c) in v {
            acc += &(c * &self.counit_mono(*m));
        }
        acc
    }

    pub fn delta_mono(&self, m: Mono) -> &Tensor2 {
        self.delta_cache[m as usize].get_or_init(|| {
            if m == 0 {
                return Tensor2::term((0, 0), CycloNum::one(self.conductor));
            }
            let g = *self.letters(m).last().expect("non-identity monomial");
            let prefix = m - self.strides[g];
            let head = self.delta_mono(prefix);
            self.tensor_mul(head, &self.gens[g].delta)
        })
    }

    pub fn delta(&self, v: &Vector) -> Tensor2 {
        let mut acc = Tensor2::new();
        for (m, c) in v {
            acc.axpy(c, self.delta_mono(*m));
        }
        acc
    }

    /// `(Δ ⊗ id) Δ(v)`.
    pub fn delta2(&self, v: &Vector) -> Tensor3 {
        let mut acc = Tensor3::new();
        for ((a, b), c) in &self.delta(v) {
            for ((x, y), d) in self.delta_mono(*a) {
                acc.add_term_owned((*x, *y, *b), c * d);
            }
        }
        acc
    }

    pub fn antipode_mono(&self, m: Mono) -> &Vector {
        self.antipode_cache[m as usize].get_or_init(|| {
            if m == 0 {
                return self.one();
            }
            let g = *self.letters(m).last().expect("non-identity monomial");
            let prefix = m - self.strides[g];
            self.mul(&self.gens[g].antipode, self.antipode_mono(prefix))
        })
    }

    pub fn antipode(&self, v: &Vector) -> Vector {
        let mut acc = Vector::new();
        for (m, c) in v {
            acc.axpy(c, self.antipode_mono(*m));
        }
        acc
    }

    fn antipode_inverse_generators(&self) -> &Result<Vec<Vector>, HopfError> {
        self.antipode_inv_gens.get_or_init(|| {
            let targets: Vec<Vector> = (0..self.gens.len()).map(|g| self.generator_monomial(g)).collect();
            let mut cur = targets.clone();
            let mut prev = targets.clone();
            for step in 1..=ANTIPODE_ORDER_LIMIT {
                prev = cur;
                cur = prev.iter().map(|v| self.antipode(v)).collect();
                if step % 2 == 0 && cur == targets {
                    return Ok(prev);
                }
            }
            let _ = prev;
            Err(HopfError::NotInvertible(format!("antipode of {} has order above {ANTIPODE_ORDER_LIMIT}", self.name)))
        })
    }

    /// `S^{-1}` on a basis monomial, using that `S` has finite order.
    pub fn antipode_inverse_mono(&self, m: Mono) -> Result<&Vector, HopfError> {
        let gens = self.antipode_inverse_generators().as_ref().map_err(|e| e.clone())?;
        if let Some(v) = self.antipode_inv_cache[m as usize].get() {
            return Ok(v);
        }
        let v = if m == 0 {
            self.one()
        } else {
            let g = *self.letters(m).last().expect("non-identity monomial");
            let prefix = m - self.strides[g];
            let tail = self.antipode_inverse_mono(prefix)?;
            self.mul(&gens[g], tail)
        };
        Ok(self.antipode_inv_cache[m as usize].get_or_init(|| v))
    }

    pub fn antipode_inverse(&self, v: &Vector) -> Result<Vector, HopfError> {
        let mut acc = Vector::new();
        for (m, c) in v {
            acc.axpy(c, self.antipode_inverse_mono(*m)?);
        }
        Ok(acc)
    }

    /// Value of a word over symbols; negative powers only for invertible generators.
    pub fn eval_word(&self, w: &Word) -> Result<Vector, HopfError> {
        let k = self.gens.len();
        let mut acc = self.one();
        for &(s, e) in w {
            if s < k {
                let n = if e < 0 {
                    if !self.is_invertible_generator(s) {
                        return Err(HopfError::Invalid(format!("negative power of non-invertible {:?}", self.gens[s].name)));
                    }
                    e.rem_euclid(self.gens[s].bound as i64)
                } else {
                    e
                };
                let letters = vec![s; n as usize];
                acc = self.mul_letters(&acc, &letters);
            } else {
                let d = self
                    .defined
                    .get(s - k)
                    .ok_or_else(|| HopfError::Invalid(format!("symbol index {s} out of range")))?;
                if e < 0 {
                    return Err(HopfError::Invalid(format!("negative power of defined symbol {:?}", d.name)));
                }
                for _ in 0..e {
                    acc = self.mul(&acc, &d.value);
                }
            }
        }
        Ok(acc)
    }

    pub fn eval_expr(&self, e: &Expr) -> Result<Vector, HopfError> {
        let mut acc = Vector::new();
        for (c, w) in &e.terms {
            acc.axpy(c, &self.eval_word(w)?);
        }
        Ok(acc)
    }

    pub fn eval_tensor(&self, t: &TensorExpr) -> Result<Tensor2, HopfError> {
        let mut acc = Tensor2::new();
        for (c, l, r) in &t.terms {
            outer(&self.eval_word(l)?, &self.eval_word(r)?, c, &mut acc);
        }
        Ok(acc)
    }

    /// Parses and evaluates an element written over this algebra's symbols.
    pub fn parse_element(&self, s: &str, vars: &[(&str, CycloNum)]) -> Result<Vector, HopfError> {
        let syms = self.symbol_names();
        let scope = Scope { conductor: self.conductor, symbols: &syms, vars };
        self.eval_expr(&parse_expr(s, &scope)?)
    }

    pub fn parse_tensor_element(&self, s: &str, vars: &[(&str, CycloNum)]) -> Result<Tensor2, HopfError> {
        let syms = self.symbol_names();
        let scope = Scope { conductor: self.conductor, symbols: &syms, vars };
        self.eval_tensor(&parse_tensor(s, &scope)?)
    }

    /// Symbolic coproduct of symbol `s` (generator or defined symbol).
    pub fn symbol_delta(&self, s: usize) -> TensorExpr {
        let k = self.gens.len();
        if s >= k {
            return self.defined[s - k].delta.clone();
        }
        if let Some(t) = &self.gens[s].delta_words {
            return t.clone();
        }
        let mut out = TensorExpr::zero();
        for ((a, b), c) in &self.gens[s].delta {
            out.terms.push((c.clone(), self.word_of(*a), self.word_of(*b)));
        }
        out
    }

    /// A monomial as a word with positive exponents.
    pub fn word_of(&self, m: Mono) -> Word {
        self.exponents(m)
            .into_iter()
            .enumerate()
            .filter(|(_, e)| *e > 0)
            .map(|(i, e)| (i, e as i64))
            .collect()
    }

    pub fn format_mono(&self, m: Mono) -> String {
        if m == 0 {
            return "1".into();
        }
        let parts: Vec<String> = self
            .exponents(m)
            .into_iter()
            .enumerate()
            .filter(|(_, e)| *e > 0)
            .map(|(i, e)| if e == 1 { self.gens[i].name.clone() } else { format!("{}^{}", self.gens[i].name, e) })
            .collect();
        parts.join("*")
    }

    pub fn format_vector(&self, v: &Vector) -> String {
        format_terms(v.iter().map(|(m, c)| (c.clone(), self.format_mono(*m))))
    }

    pub fn format_tensor(&self, t: &Tensor2) -> String {
        format_terms(t.iter().map(|((a, b), c)| (c.clone(), format!("{} ⊗ {}", self.format_mono(*a), self.format_mono(*b)))))
    }

    /// Same generators, bounds, relations and coalgebra data, ignoring names.
    pub fn same_structure(&self, other: &PresentedHopfAlgebra) -> bool {
        self.conductor == other.conductor
            && self.gens.len() == other.gens.len()
            && self.gens.iter().zip(&other.gens).all(|(a, b)| {
                a.bound == b.bound
                    && a.power_image == b.power_image
                    && a.delta == b.delta
                    && a.epsilon == b.epsilon
                    && a.antipode == b.antipode
            })
            && self.table == other.table
    }
}

fn format_terms(terms: impl Iterator<Item = (CycloNum, String)>) -> String {
    let mut out = String::new();
    for (c, body) in terms {
        let cs = c.to_string();
        let compound = cs.trim_start_matches('-').contains([' ']);
        let (neg, mag) = if !compound && cs.starts_with('-') { (true, cs[1..].to_string()) } else { (false, cs) };
        let coeff = if compound { format!("({mag})") } else { mag };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if body == "1" {
            out.push_str(&coeff);
        } else if coeff == "1" {
            out.push_str(&body);
        } else {
            out.push_str(&format!("{coeff}*{body}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Incremental construction of a presentation from textual expressions.
///
/// Expressions are parsed when the method is called, against the generators
/// and defined symbols declared so far and the registered scalar variables.
pub struct AlgebraBuilder {
    name: String,
    conductor: u32,
    names: Vec<String>,
    bounds: Vec<u32>,
    power: Vec<Option<Expr>>,
    delta: Vec<Option<TensorExpr>>,
    epsilon: Vec<Option<CycloNum>>,
    antipode: Vec<Option<Expr>>,
    symbolic_delta: Vec<bool>,
    swaps: BTreeMap<(usize, usize), Expr>,
    defined: Vec<(String, Expr, TensorExpr)>,
    vars: Vec<(String, CycloNum)>,
    expected_dim: Option<usize>,
    error: Option<HopfError>,
}

impl AlgebraBuilder {
    pub fn new(name: &str, conductor: u32) -> Self {
        AlgebraBuilder {
            name: name.to_string(),
            conductor,
            names: Vec::new(),
            bounds: Vec::new(),
            power: Vec::new(),
            delta: Vec::new(),
            epsilon: Vec::new(),
            antipode: Vec::new(),
            symbolic_delta: Vec::new(),
            swaps: BTreeMap::new(),
            defined: Vec::new(),
            vars: Vec::new(),
            expected_dim: None,
            error: None,
        }
    }

    fn fail(&mut self, e: HopfError) {
        if self.error.is_none() {
            self.error = Some(e);
        }
    }

    fn symbols(&self) -> Vec<String> {
        self.names.iter().cloned().chain(self.defined.iter().map(|d| d.0.clone())).collect()
    }

    fn parse(&mut self, s: &str) -> Option<Expr> {
        let syms = self.symbols();
        let vars: Vec<(&str, CycloNum)> = self.vars.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
        let scope = Scope { conductor: self.conductor, symbols: &syms, vars: &vars };
        match parse_expr(s, &scope) {
            Ok(e) => Some(e),
            Err(e) => {
                self.fail(e);
                None
            }
        }
    }

    fn parse_t(&mut self, s: &str) -> Option<TensorExpr> {
        let syms = self.symbols();
        let vars: Vec<(&str, CycloNum)> = self.vars.iter().map(|(n, v)| (n.as_str(), v.clone())).collect();
        let scope = Scope { conductor: self.conductor, symbols: &syms, vars: &vars };
        match parse_tensor(s, &scope) {
            Ok(e) => Some(e),
            Err(e) => {
                self.fail(e);
                None
            }
        }
    }

    fn gen(&mut self, name: &str) -> Option<usize> {
        let i = self.names.iter().position(|n| n == name);
        if i.is_none() {
            self.fail(HopfError::Parse(format!("unknown generator {name:?}")));
        }
        i
    }

    /// Registers a scalar usable by name in later expressions.
    pub fn var(&mut self, name: &str, value: CycloNum) -> &mut Self {
        self.vars.retain(|(n, _)| n != name);
        self.vars.push((name.to_string(), value));
        self
    }

    pub fn generator(&mut self, name: &str, bound: u32) -> &mut Self {
        self.names.push(name.to_string());
        self.bounds.push(bound);
        self.power.push(None);
        self.delta.push(None);
        self.epsilon.push(None);
        self.antipode.push(None);
        self.symbolic_delta.push(false);
        self
    }

    /// `name^{bound} = image`.
    pub fn power(&mut self, name: &str, image: &str) -> &mut Self {
        if let (Some(g), Some(e)) = (self.gen(name), self.parse(image)) {
            self.power[g] = Some(e);
        }
        self
    }

    /// `left · right = image`; `left` must be declared after `right`.
    pub fn swap(&mut self, left: &str, right: &str, image: &str) -> &mut Self {
        if let (Some(l), Some(r), Some(e)) = (self.gen(left), self.gen(right), self.parse(image)) {
            self.swaps.insert((l, r), e);
        }
        self
    }

    pub fn delta(&mut self, name: &str, t: &str) -> &mut Self {
        if let (Some(g), Some(e)) = (self.gen(name), self.parse_t(t)) {
            self.delta[g] = Some(e);
        }
        self
    }

    /// Also keeps the given coproduct in symbolic form.
    pub fn delta_symbolic(&mut self, name: &str, t: &str) -> &mut Self {
        self.delta(name, t);
        if let Some(g) = self.names.iter().position(|n| n == name) {
            self.symbolic_delta[g] = true;
        }
        self
    }

    pub fn counit(&mut self, name: &str, value: CycloNum) -> &mut Self {
        if let Some(g) = self.gen(name) {
            self.epsilon[g] = Some(value);
        }
        self
    }

    pub fn antipode(&mut self, name: &str, image: &str) -> &mut Self {
        if let (Some(g), Some(e)) = (self.gen(name), self.parse(image)) {
            self.antipode[g] = Some(e);
        }
        self
    }

    /// `Δ(g) = g ⊗ g`, `ε(g) = 1`, `S(g) = g^{-1}`.
    pub fn grouplike(&mut self, name: &str) -> &mut Self {
        self.delta(name, &format!("{name} ⊗ {name}"));
        self.counit(name, CycloNum::one(self.conductor));
        self.antipode(name, &format!("{name}^-1"))
    }

    /// `Δ(x) = left ⊗ x + x ⊗ right`, `ε(x) = 0`, `S(x) = -left^{-1} x right^{-1}`.
    pub fn skew_primitive(&mut self, name: &str, left: &str, right: &str) -> &mut Self {
        self.delta(name, &format!("{left} ⊗ {name} + {name} ⊗ {right}"));
        self.counit(name, CycloNum::zero(self.conductor));
        self.antipode(name, &format!("-({left})^-1*{name}*({right})^-1"))
    }

    /// Declares a named shorthand with its symbolic coproduct.
    pub fn define(&mut self, name: &str, value: &str, delta: &str) -> &mut Self {
        let Some(v) = self.parse(value) else { return self };
        self.defined.push((name.to_string(), v, TensorExpr::zero()));
        if let Some(t) = self.parse_t(delta) {
            self.defined.last_mut().expect("just pushed").2 = t;
        }
        self
    }

    pub fn expected_dimension(&mut self, d: usize) -> &mut Self {
        self.expected_dim = Some(d);
        self
    }

    fn letters(&self, e: &Expr) -> Result<Letters, HopfError> {
        self.expand(e, 0)
    }

    /// Expands an expression into letter sequences, substituting defined
    /// symbols by their values.
    fn expand(&self, e: &Expr, depth: usize) -> Result<Letters, HopfError> {
        if depth > self.defined.len() {
            return Err(HopfError::Invalid("defined symbols refer to each other cyclically".into()));
        }
        let k = self.names.len();
        let mut out = Vec::new();
        for (c, w) in &e.terms {
            let mut acc: Letters = vec![(c.clone(), Vec::new())];
            for &(s, p) in w {
                if s >= k {
                    if p < 0 {
                        return Err(HopfError::Invalid(format!("negative power of defined symbol {:?}", self.defined[s - k].0)));
                    }
                    let sub = self.expand(&self.defined[s - k].1, depth + 1)?;
                    for _ in 0..p {
                        let mut next = Vec::new();
                        for (c1, l1) in &acc {
                            for (c2, l2) in &sub {
                                let mut l = l1.clone();
                                l.extend_from_slice(l2);
                                next.push((c1 * c2, l));
                            }
                        }
                        acc = next;
                    }
                    continue;
                }
                let n = if p < 0 {
                    let pw = self.power[s].as_ref();
                    let unit = pw.is_some_and(|x| x.terms.len() == 1 && x.terms[0].0.is_one() && x.terms[0].1.is_empty());
                    if !unit {
                        return Err(HopfError::Invalid(format!("negative power of non-invertible {:?}", self.names[s])));
                    }
                    p.rem_euclid(self.bounds[s] as i64)
                } else {
                    p
                };
                for (_, l) in acc.iter_mut() {
                    l.extend(std::iter::repeat_n(s, n as usize));
                }
            }
            out.extend(acc);
        }
        Ok(out)
    }

    pub fn build(&self) -> Result<PresentedHopfAlgebra, HopfError> {
        if let Some(e) = &self.error {
            return Err(e.clone());
        }
        let power = self
            .power
            .iter()
            .map(|p| match p {
                Some(e) => self.letters(e),
                None => Ok(Vec::new()),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut swaps = BTreeMap::new();
        for (key, e) in &self.swaps {
            swaps.insert(*key, self.letters(e)?);
        }
        let mut alg = PresentedHopfAlgebra::assemble(
            &self.name,
            self.conductor,
            self.names.clone(),
            self.bounds.clone(),
            power,
            swaps,
            self.expected_dim,
        )?;
        for (name, value, delta) in &self.defined {
            let v = alg.eval_expr(value)?;
            alg.defined.push(DefinedSymbol { name: name.clone(), value: v, delta: delta.clone() });
        }
        for g in 0..self.names.len() {
            let name = &self.names[g];
            let d = self.delta[g].as_ref().ok_or_else(|| HopfError::Invalid(format!("no coproduct for {name:?}")))?;
            let s = self.antipode[g].as_ref().ok_or_else(|| HopfError::Invalid(format!("no antipode for {name:?}")))?;
            let e = self.epsilon[g].clone().ok_or_else(|| HopfError::Invalid(format!("no counit for {name:?}")))?;
            let delta = alg.eval_tensor(d)?;
            let antipode = alg.eval_expr(s)?;
            let spec = &mut alg.gens[g];
            spec.delta = delta;
            spec.antipode = antipode;
            spec.epsilon = e;
            spec.delta_words = if self.symbolic_delta[g] { Some(d.clone()) } else { None };
        }
        Ok(alg)
    }
}
