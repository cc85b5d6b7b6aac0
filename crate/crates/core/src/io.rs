//! JSON form of a presentation.
//!
//! Elements are lists of `{"monomial": [exponents], "coeff": …}` with exact
//! rational coefficient strings, so export followed by import reproduces the
//! algebra exactly.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycloNum;
use crate::hopf::{DefinedSymbol, GeneratorSpec, HopfError, PresentedHopfAlgebra, SwapRule, Tensor2, TensorExpr, Vector, Word};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub monomial: Vec<u32>,
    pub coeff: CycloNum,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorTermJson {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub coeff: CycloNum,
}

/// A term of a coproduct written over symbols, as `(name, exponent)` words.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordTermJson {
    pub coeff: CycloNum,
    pub left: Vec<(String, i64)>,
    pub right: Vec<(String, i64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorJson {
    pub name: String,
    pub bound: u32,
    pub power_image: Vec<TermJson>,
    pub delta: Vec<TensorTermJson>,
    pub epsilon: CycloNum,
    pub antipode: Vec<TermJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_words: Option<Vec<WordTermJson>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwapJson {
    pub left: String,
    pub right: String,
    pub image: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefinedJson {
    pub name: String,
    pub value: Vec<TermJson>,
    pub delta: Vec<WordTermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub name: String,
    pub conductor: u32,
    pub generators: Vec<GeneratorJson>,
    pub swaps: Vec<SwapJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub defined: Vec<DefinedJson>,
    pub dimension: usize,
}

/// Rejected input, with the JSON path of the offending field.
#[derive(Debug, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ImportError {
    pub path: String,
    /// 1-based; 0 when the problem was found after parsing.
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn semantic(path: impl Into<String>, message: impl Into<String>) -> ImportError {
    ImportError { path: path.into(), line: 0, column: 0, message: message.into() }
}

pub fn export_presentation(alg: &PresentedHopfAlgebra) -> PresentationJson {
    let vector = |v: &Vector| -> Vec<TermJson> {
        v.iter().map(|(m, c)| TermJson { monomial: alg.exponents(*m), coeff: c.clone() }).collect()
    };
    let tensor = |t: &Tensor2| -> Vec<TensorTermJson> {
        t.iter()
            .map(|((a, b), c)| TensorTermJson { left: alg.exponents(*a), right: alg.exponents(*b), coeff: c.clone() })
            .collect()
    };
    let names = alg.symbol_names();
    let word = |w: &Word| -> Vec<(String, i64)> { w.iter().map(|(s, e)| (names[*s].clone(), *e)).collect() };
    let words = |t: &TensorExpr| -> Vec<WordTermJson> {
        t.terms.iter().map(|(c, l, r)| WordTermJson { coeff: c.clone(), left: word(l), right: word(r) }).collect()
    };
    let gname = |i: usize| alg.generator(i).name.clone();
    PresentationJson {
        name: alg.name().to_string(),
        conductor: alg.conductor(),
        generators: alg
            .generators()
            .iter()
            .map(|g| GeneratorJson {
                name: g.name.clone(),
                bound: g.bound,
                power_image: vector(&g.power_image),
                delta: tensor(&g.delta),
                epsilon: g.epsilon.clone(),
                antipode: vector(&g.antipode),
                delta_words: g.delta_words.as_ref().map(words),
            })
            .collect(),
        swaps: alg.swaps().iter().map(|s| SwapJson { left: gname(s.left), right: gname(s.right), image: vector(&s.image) }).collect(),
        defined: alg
            .defined_symbols()
            .iter()
            .map(|d| DefinedJson { name: d.name.clone(), value: vector(&d.value), delta: words(&d.delta) })
            .collect(),
        dimension: alg.dimension(),
    }
}

pub fn export_json(alg: &PresentedHopfAlgebra, pretty: bool) -> String {
    let p = export_presentation(alg);
    if pretty {
        serde_json::to_string_pretty(&p).expect("presentation serializes")
    } else {
        serde_json::to_string(&p).expect("presentation serializes")
    }
}

/// Parses and validates a presentation.
pub fn import_json(text: &str) -> Result<PresentedHopfAlgebra, ImportError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let p: PresentationJson = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        ImportError { path, line: inner.line(), column: inner.column(), message: inner.to_string() }
    })?;
    import_presentation(&p)
}

pub fn import_presentation(p: &PresentationJson) -> Result<PresentedHopfAlgebra, ImportError> {
    if p.conductor == 0 {
        return Err(semantic("conductor", "must be positive"));
    }
    let bounds: Vec<u32> = p.generators.iter().map(|g| g.bound).collect();
    for (i, b) in bounds.iter().enumerate() {
        if *b < 2 {
            return Err(semantic(format!("generators[{i}].bound"), "must be at least 2"));
        }
    }
    let dim = bounds.iter().try_fold(1usize, |acc, &b| acc.checked_mul(b as usize));
    if dim != Some(p.dimension) {
        return Err(semantic("dimension", format!("{} does not match the product of the bounds", p.dimension)));
    }
    let coeff = |path: &str, c: &CycloNum| -> Result<CycloNum, ImportError> {
        if c.conductor() != p.conductor {
            return Err(semantic(path, format!("coefficient over conductor {} in an algebra over {}", c.conductor(), p.conductor)));
        }
        Ok(c.clone())
    };
    let mono = |path: &str, e: &[u32]| -> Result<u32, ImportError> {
        if e.len() != bounds.len() {
            return Err(semantic(path, format!("expected {} exponents, got {}", bounds.len(), e.len())));
        }
        let mut m: u32 = 0;
        for (i, (&x, &b)) in e.iter().zip(&bounds).enumerate() {
            if x >= b {
                return Err(semantic(format!("{path}[{i}]"), format!("exponent {x} is not below the bound {b}")));
            }
            m = m * b + x;
        }
        Ok(m)
    };
    let vector = |path: &str, terms: &[TermJson]| -> Result<Vector, ImportError> {
        let mut v = Vector::new();
        for (i, t) in terms.iter().enumerate() {
            let m = mono(&format!("{path}[{i}].monomial"), &t.monomial)?;
            if v.get(&m).is_some() {
                return Err(semantic(format!("{path}[{i}]"), "repeated monomial"));
            }
            v.add_term_owned(m, coeff(&format!("{path}[{i}].coeff"), &t.coeff)?);
        }
        Ok(v)
    };
    let tensor = |path: &str, terms: &[TensorTermJson]| -> Result<Tensor2, ImportError> {
        let mut v = Tensor2::new();
        for (i, t) in terms.iter().enumerate() {
            let k = (mono(&format!("{path}[{i}].left"), &t.left)?, mono(&format!("{path}[{i}].right"), &t.right)?);
            if v.get(&k).is_some() {
                return Err(semantic(format!("{path}[{i}]"), "repeated term"));
            }
            v.add_term_owned(k, coeff(&format!("{path}[{i}].coeff"), &t.coeff)?);
        }
        Ok(v)
    };
    let symbols: Vec<&str> =
        p.generators.iter().map(|g| g.name.as_str()).chain(p.defined.iter().map(|d| d.name.as_str())).collect();
    for (i, s) in symbols.iter().enumerate() {
        if symbols[..i].contains(s) {
            return Err(semantic("generators", format!("symbol {s:?} is declared twice")));
        }
    }
    let word = |path: &str, w: &[(String, i64)]| -> Result<Word, ImportError> {
        w.iter()
            .enumerate()
            .map(|(i, (s, e))| {
                symbols
                    .iter()
                    .position(|x| x == s)
                    .map(|idx| (idx, *e))
                    .ok_or_else(|| semantic(format!("{path}[{i}]"), format!("unknown symbol {s:?}")))
            })
            .collect()
    };
    let words = |path: &str, terms: &[WordTermJson]| -> Result<TensorExpr, ImportError> {
        let mut t = TensorExpr::zero();
        for (i, w) in terms.iter().enumerate() {
            t = t.plus(
                coeff(&format!("{path}[{i}].coeff"), &w.coeff)?,
                word(&format!("{path}[{i}].left"), &w.left)?,
                word(&format!("{path}[{i}].right"), &w.right)?,
            );
        }
        Ok(t)
    };
    let mut gens = Vec::with_capacity(p.generators.len());
    for (i, g) in p.generators.iter().enumerate() {
        let at = |f: &str| format!("generators[{i}].{f}");
        gens.push(GeneratorSpec {
            name: g.name.clone(),
            bound: g.bound,
            power_image: vector(&at("power_image"), &g.power_image)?,
            delta: tensor(&at("delta"), &g.delta)?,
            epsilon: coeff(&at("epsilon"), &g.epsilon)?,
            antipode: vector(&at("antipode"), &g.antipode)?,
            delta_words: g.delta_words.as_ref().map(|w| words(&at("delta_words"), w)).transpose()?,
        });
    }
    let gen_index = |path: &str, name: &str| {
        p.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| semantic(path, format!("unknown generator {name:?}")))
    };
    let mut swaps = Vec::with_capacity(p.swaps.len());
    for (i, s) in p.swaps.iter().enumerate() {
        let left = gen_index(&format!("swaps[{i}].left"), &s.left)?;
        let right = gen_index(&format!("swaps[{i}].right"), &s.right)?;
        if left <= right {
            return Err(semantic(format!("swaps[{i}]"), "the left generator must come after the right one"));
        }
        swaps.push(SwapRule { left, right, image: vector(&format!("swaps[{i}].image"), &s.image)? });
    }
    let mut defined = Vec::with_capacity(p.defined.len());
    for (i, d) in p.defined.iter().enumerate() {
        defined.push(DefinedSymbol {
            name: d.name.clone(),
            value: vector(&format!("defined[{i}].value"), &d.value)?,
            delta: words(&format!("defined[{i}].delta"), &d.delta)?,
        });
    }
    PresentedHopfAlgebra::from_specs(&p.name, p.conductor, gens, swaps, defined, Some(p.dimension))
        .map_err(|e: HopfError| semantic("", e.to_string()))
}
