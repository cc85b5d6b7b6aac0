//! Symbolic action on `k[u]/(u^n − β)`: the image of each `u^p` under each
//! symbol as a polynomial in the unknown scalars, and the equations a
//! module-algebra structure has to satisfy.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::cyclotomic::CycloNum;
use crate::hopf::{HopfError, PresentedHopfAlgebra, TensorExpr, Vector, Word};

use super::poly::Poly;

/// `Σ c_e u^e`, keyed by the exponent.
pub(crate) type Column = BTreeMap<u32, Poly>;

/// What is known about a symbol's action.
#[derive(Clone, Debug)]
pub(crate) enum SymbolData {
    /// `s · u = coeff · u^exponent`; higher powers follow from `Δ(s)`.
    OnU { exponent: u32, coeff: Poly },
    /// `s · u^p` for every `p < n`.
    Columns(Vec<Column>),
}

#[derive(Clone, Debug)]
pub(crate) struct Equation {
    pub poly: Poly,
    pub origin: String,
}

pub(crate) struct SymbolicAction {
    /// Per symbol (generators, then defined symbols), `s · u^p` for `p < n`.
    pub columns: Vec<Vec<Column>>,
    pub equations: Vec<Equation>,
}

struct Engine<'a> {
    alg: &'a PresentedHopfAlgebra,
    n: u32,
    beta: CycloNum,
    nvars: usize,
    data: &'a [Option<SymbolData>],
    deltas: Vec<TensorExpr>,
    memo: RefCell<HashMap<(usize, u32), Column>>,
    busy: RefCell<HashSet<(usize, u32)>>,
}

fn add_into(acc: &mut Column, e: u32, p: &Poly) {
    if p.is_zero() {
        return;
    }
    let sum = match acc.get(&e) {
        Some(old) => old.add(p),
        None => p.clone(),
    };
    if sum.is_zero() {
        acc.remove(&e);
    } else {
        acc.insert(e, sum);
    }
}

impl Engine<'_> {
    fn constant(&self, c: CycloNum) -> Poly {
        Poly::constant(self.nvars, c)
    }

    fn unit_column(&self, e: u32) -> Column {
        let mut c = Column::new();
        c.insert(e % self.n, self.constant(CycloNum::one(self.alg.conductor())));
        c
    }

    /// Product in `k[u]/(u^n − β)`.
    fn mul(&self, a: &Column, b: &Column) -> Column {
        let mut out = Column::new();
        for (i, p) in a {
            for (j, q) in b {
                let mut prod = p.mul(q);
                let mut e = i + j;
                if e >= self.n {
                    e -= self.n;
                    prod = prod.scale(&self.beta);
                }
                add_into(&mut out, e, &prod);
            }
        }
        out
    }

    fn counit(&self, s: usize) -> CycloNum {
        let k = self.alg.num_generators();
        if s < k {
            self.alg.generator(s).epsilon.clone()
        } else {
            self.alg.counit(&self.alg.defined_symbols()[s - k].value)
        }
    }

    fn name(&self, s: usize) -> String {
        let k = self.alg.num_generators();
        if s < k {
            self.alg.generator(s).name.clone()
        } else {
            self.alg.defined_symbols()[s - k].name.clone()
        }
    }

    fn data(&self, s: usize) -> Result<&SymbolData, HopfError> {
        self.data[s]
            .as_ref()
            .ok_or_else(|| HopfError::Invalid(format!("no action given for {:?}", self.name(s))))
    }

    /// `s · u^p` for `p < n`.
    fn column(&self, s: usize, p: u32) -> Result<Column, HopfError> {
        if let Some(c) = self.memo.borrow().get(&(s, p)) {
            return Ok(c.clone());
        }
        let out = match self.data(s)? {
            SymbolData::Columns(cols) => cols[p as usize].clone(),
            SymbolData::OnU { exponent, coeff } => match p {
                0 => {
                    let mut c = Column::new();
                    add_into(&mut c, 0, &self.constant(self.counit(s)));
                    c
                }
                1 => {
                    let mut c = Column::new();
                    add_into(&mut c, exponent % self.n, coeff);
                    c
                }
                _ => {
                    if !self.busy.borrow_mut().insert((s, p)) {
                        return Err(HopfError::NonTermination(format!(
                            "the action of {:?} on u^{p} depends on itself",
                            self.name(s)
                        )));
                    }
                    let r = self.leibniz(s, p);
                    self.busy.borrow_mut().remove(&(s, p));
                    r?
                }
            },
        };
        self.memo.borrow_mut().insert((s, p), out.clone());
        Ok(out)
    }

    /// `Σ (s₍₁₎ · u^{p−1})(s₍₂₎ · u)`.
    fn leibniz(&self, s: usize, p: u32) -> Result<Column, HopfError> {
        let left = self.unit_column(p - 1);
        let right = self.unit_column(1);
        let mut out = Column::new();
        for (c, w1, w2) in &self.deltas[s].terms {
            let a = self.apply_word(w1, &left)?;
            if a.is_empty() {
                continue;
            }
            let b = self.apply_word(w2, &right)?;
            for (e, q) in self.mul(&a, &b) {
                add_into(&mut out, e, &q.scale(c));
            }
        }
        Ok(out)
    }

    fn apply_symbol(&self, s: usize, v: &Column) -> Result<Column, HopfError> {
        let mut out = Column::new();
        for (r, p) in v {
            for (e, q) in self.column(s, *r)? {
                add_into(&mut out, e, &p.mul(&q));
            }
        }
        Ok(out)
    }

    /// A word acts letter by letter from the right.
    fn apply_word(&self, w: &Word, v: &Column) -> Result<Column, HopfError> {
        let k = self.alg.num_generators();
        let mut cur = v.clone();
        for &(s, e) in w.iter().rev() {
            let times = if e >= 0 {
                e
            } else if s < k && self.alg.is_invertible_generator(s) {
                e.rem_euclid(self.alg.generator(s).bound as i64)
            } else {
                return Err(HopfError::Invalid(format!("negative power of {:?}", self.name(s))));
            };
            for _ in 0..times {
                cur = self.apply_symbol(s, &cur)?;
                if cur.is_empty() {
                    return Ok(cur);
                }
            }
        }
        Ok(cur)
    }
}

/// A relation `Σ c · word = 0` with a printable form.
struct Relation {
    terms: Vec<(CycloNum, Word)>,
    text: String,
}

fn vector_terms(alg: &PresentedHopfAlgebra, v: &Vector, sign: &CycloNum) -> Vec<(CycloNum, Word)> {
    v.iter().map(|(m, c)| (c * sign, alg.word_of(*m))).collect()
}

fn relations(alg: &PresentedHopfAlgebra) -> Vec<Relation> {
    let one = CycloNum::one(alg.conductor());
    let minus = -&one;
    let k = alg.num_generators();
    let mut out = Vec::new();
    for s in alg.swaps() {
        let mut terms = vec![(one.clone(), vec![(s.left, 1), (s.right, 1)])];
        terms.extend(vector_terms(alg, &s.image, &minus));
        let text = format!(
            "{}*{} = {}",
            alg.generator(s.left).name,
            alg.generator(s.right).name,
            alg.format_vector(&s.image)
        );
        out.push(Relation { terms, text });
    }
    for (i, g) in alg.generators().iter().enumerate() {
        let mut terms = vec![(one.clone(), vec![(i, g.bound as i64)])];
        terms.extend(vector_terms(alg, &g.power_image, &minus));
        out.push(Relation { terms, text: format!("{}^{} = {}", g.name, g.bound, alg.format_vector(&g.power_image)) });
    }
    for (j, d) in alg.defined_symbols().iter().enumerate() {
        let mut terms = vec![(one.clone(), vec![(k + j, 1)])];
        terms.extend(vector_terms(alg, &d.value, &minus));
        out.push(Relation { terms, text: format!("{} = {}", d.name, alg.format_vector(&d.value)) });
    }
    out
}

/// Builds the symbolic action of `alg` on `k[u]/(u^n − β)` from per-symbol
/// data, and the equations: every relation acts as zero on every `u^p`,
/// and `s · u^n = β ε(s)` for symbols given on `u` only.
pub(crate) fn build(
    alg: &PresentedHopfAlgebra,
    n: u32,
    beta: &CycloNum,
    nvars: usize,
    data: &[Option<SymbolData>],
) -> Result<SymbolicAction, HopfError> {
    let nsym = alg.num_generators() + alg.defined_symbols().len();
    assert_eq!(data.len(), nsym, "one entry per symbol");
    let engine = Engine {
        alg,
        n,
        beta: beta.clone(),
        nvars,
        data,
        deltas: (0..nsym).map(|s| alg.symbol_delta(s)).collect(),
        memo: RefCell::new(HashMap::new()),
        busy: RefCell::new(HashSet::new()),
    };
    let mut columns = Vec::with_capacity(nsym);
    for s in 0..nsym {
        if data[s].is_none() {
            columns.push(Vec::new());
            continue;
        }
        columns.push((0..n).map(|p| engine.column(s, p)).collect::<Result<Vec<_>, _>>()?);
    }

    let mut equations = Vec::new();
    for s in 0..nsym {
        if let Some(SymbolData::OnU { .. }) = data[s] {
            let mut wrap = engine.leibniz(s, n)?;
            let target = engine.constant(&engine.counit(s) * beta);
            add_into(&mut wrap, 0, &target.neg());
            for (e, p) in wrap {
                equations.push(Equation { poly: p, origin: format!("{}·u^{n} = β ε({}) at u^{e}", engine.name(s), engine.name(s)) });
            }
        }
    }

    // Relations only read the finished columns, so they can run in parallel.
    let table = Table { alg, n, nvars, columns: &columns };
    let rels = relations(alg);
    let per_relation: Vec<Vec<Equation>> = rels
        .par_iter()
        .map(|rel| -> Result<Vec<Equation>, HopfError> {
            let mut out = Vec::new();
            for p in 0..n {
                let start = table.unit_column(p);
                let mut acc = Column::new();
                for (c, w) in &rel.terms {
                    for (e, q) in table.apply_word(w, &start)? {
                        add_into(&mut acc, e, &q.scale(c));
                    }
                }
                for (e, q) in acc {
                    out.push(Equation { poly: q, origin: format!("{} on u^{p}, coefficient of u^{e}", rel.text) });
                }
            }
            Ok(out)
        })
        .collect::<Result<_, _>>()?;
    equations.extend(per_relation.into_iter().flatten());
    Ok(SymbolicAction { columns, equations })
}

/// Read-only view of finished columns.
struct Table<'a> {
    alg: &'a PresentedHopfAlgebra,
    n: u32,
    nvars: usize,
    columns: &'a [Vec<Column>],
}

impl Table<'_> {
    fn unit_column(&self, e: u32) -> Column {
        let mut c = Column::new();
        c.insert(e % self.n, Poly::constant(self.nvars, CycloNum::one(self.alg.conductor())));
        c
    }

    fn apply_word(&self, w: &Word, v: &Column) -> Result<Column, HopfError> {
        let k = self.alg.num_generators();
        let mut cur = v.clone();
        for &(s, e) in w.iter().rev() {
            let times = if e >= 0 {
                e
            } else if s < k && self.alg.is_invertible_generator(s) {
                e.rem_euclid(self.alg.generator(s).bound as i64)
            } else {
                return Err(HopfError::Invalid("negative power of a non-invertible symbol".into()));
            };
            let cols = &self.columns[s];
            if cols.is_empty() {
                return Err(HopfError::Invalid(format!("no action given for symbol {s}")));
            }
            for _ in 0..times {
                let mut out = Column::new();
                for (r, p) in &cur {
                    for (e, q) in &cols[*r as usize] {
                        add_into(&mut out, *e, &p.mul(q));
                    }
                }
                cur = out;
                if cur.is_empty() {
                    return Ok(cur);
                }
            }
        }
        Ok(cur)
    }
}

/// Evaluates columns at a full assignment of the unknowns.
pub(crate) fn evaluate_columns(cols: &[Column], values: &[CycloNum]) -> Vec<Vec<(u32, CycloNum)>> {
    cols.iter()
        .map(|c| c.iter().map(|(e, p)| (*e, p.eval(values))).filter(|(_, v)| !v.is_zero()).collect())
        .collect()
}
