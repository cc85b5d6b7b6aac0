//! The Drinfeld double `D(H) = K^{cop} ⋈ H` of `H`, given a perfect pairing
//! with a presented dual `K`, and comparison with printed presentations.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::DoubleFixture;
use crate::cyclotomic::CycloNum;
use crate::hopf::{
    AxiomCheck, DefinedSymbol, GeneratorSpec, HopfElement, HopfError, Mono, PresentedHopfAlgebra, SwapRule, Tensor2,
    Tensor3, TensorExpr, Vector, Word,
};
use crate::pairing::DualityPairing;

const MAX_REPORTED: usize = 8;

/// `a · p` rewritten with the dual generator first.
#[derive(Clone, Debug)]
pub struct CrossRelation {
    pub h_generator: String,
    pub dual_generator: String,
    pub value: HopfElement,
}

pub struct DoubleBuildResult {
    pub double: Arc<PresentedHopfAlgebra>,
    pub cross_relations: Vec<CrossRelation>,
    dual_dim: usize,
    h_dim: usize,
    dual_gens: usize,
}

impl DoubleBuildResult {
    /// `p ⋈ 1` for `p` in the dual.
    pub fn embed_dual(&self, v: &Vector) -> Vector {
        v.iter().map(|(m, c)| (m * self.h_dim as Mono, c.clone())).collect()
    }

    /// `ε ⋈ a` for `a` in `H`.
    pub fn embed_h(&self, v: &Vector) -> Vector {
        v.clone()
    }

    /// The double monomial `p ⋈ a`.
    pub fn mono(&self, p: Mono, a: Mono) -> Mono {
        p * self.h_dim as Mono + a
    }

    pub fn dual_dimension(&self) -> usize {
        self.dual_dim
    }

    pub fn h_dimension(&self) -> usize {
        self.h_dim
    }

    /// Number of generators coming from the dual.
    pub fn dual_generators(&self) -> usize {
        self.dual_gens
    }
}

fn embed_left(v: &Vector, h_dim: usize) -> Vector {
    v.iter().map(|(m, c)| (m * h_dim as Mono, c.clone())).collect()
}

fn embed_left2(t: &Tensor2, h_dim: usize, flip: bool) -> Tensor2 {
    let s = h_dim as Mono;
    t.iter()
        .map(|((a, b), c)| if flip { ((b * s, a * s), c.clone()) } else { ((a * s, b * s), c.clone()) })
        .collect()
}

fn remap_word(w: &Word, map: &dyn Fn(usize) -> usize) -> Word {
    w.iter().map(|&(s, e)| (map(s), e)).collect()
}

fn remap_tensor(t: &TensorExpr, map: &dyn Fn(usize) -> usize, flip: bool) -> TensorExpr {
    let t = if flip { t.flip() } else { t.clone() };
    TensorExpr { terms: t.terms.iter().map(|(c, l, r)| (c.clone(), remap_word(l, map), remap_word(r, map))).collect() }
}

/// `a p = Σ ⟨p₁, S⁻¹(a₃)⟩⟨p₃, a₁⟩ p₂ a₂`, with `Δ²` taken in `K` and `H`.
fn cross_value(
    pairing: &DualityPairing,
    a3: &Tensor3,
    p3: &Tensor3,
    h_dim: usize,
) -> Result<Vector, HopfError> {
    let h = pairing.right();
    let mut out = Vector::new();
    for ((a1, a2, a_3), c) in a3 {
        let s_inv = h.antipode_inverse_mono(*a_3)?;
        for ((p1, p2, p_3), d) in p3 {
            let right = pairing.pair_mono(*p_3, *a1)?;
            if right.is_zero() {
                continue;
            }
            let mut left = CycloNum::zero(h.conductor());
            for (m, e) in s_inv {
                left += &(e * &pairing.pair_mono(*p1, *m)?);
            }
            if left.is_zero() {
                continue;
            }
            out.add_term_owned(p2 * h_dim as Mono + a2, &(c * d) * &(&left * &right));
        }
    }
    Ok(out)
}

/// `(H-generator, dual generator) ↦ a · p` in the double's basis.
pub fn cross_relation(pairing: &DualityPairing, a: usize, p: usize) -> Result<Vector, HopfError> {
    let (k, h) = (pairing.left(), pairing.right());
    let a3 = h.delta2(&h.generator_monomial(a));
    let p3 = k.delta2(&k.generator_monomial(p));
    cross_value(pairing, &a3, &p3, h.dimension())
}

/// Builds `D(H)` from a perfect pairing between `K ≅ H^*` and `H`.
pub fn build_double(pairing: &DualityPairing) -> Result<DoubleBuildResult, HopfError> {
    if !pairing.is_perfect()? {
        return Err(HopfError::Invalid("the pairing is not perfect".into()));
    }
    let (k, h) = (pairing.left().clone(), pairing.right().clone());
    let (kk, kh) = (k.num_generators(), h.num_generators());
    let (dk, dh) = (k.dimension(), h.dimension());
    let kdef = k.defined_symbols().len();

    let k_sym = move |s: usize| if s < kk { s } else { s + kh };
    let h_sym = move |s: usize| if s < kh { s + kk } else { s + kk + kdef };

    let mut gens = Vec::with_capacity(kk + kh);
    for (g, spec) in k.generators().iter().enumerate() {
        let s_inv = k.antipode_inverse(&k.generator_monomial(g))?;
        gens.push(GeneratorSpec {
            name: spec.name.clone(),
            bound: spec.bound,
            power_image: embed_left(&spec.power_image, dh),
            delta: embed_left2(&spec.delta, dh, true),
            epsilon: spec.epsilon.clone(),
            antipode: embed_left(&s_inv, dh),
            delta_words: spec.delta_words.as_ref().map(|t| remap_tensor(t, &k_sym, true)),
        });
    }
    for spec in h.generators() {
        gens.push(GeneratorSpec {
            name: spec.name.clone(),
            bound: spec.bound,
            power_image: spec.power_image.clone(),
            delta: spec.delta.clone(),
            epsilon: spec.epsilon.clone(),
            antipode: spec.antipode.clone(),
            delta_words: spec.delta_words.as_ref().map(|t| remap_tensor(t, &h_sym, false)),
        });
    }

    let mut swaps: Vec<SwapRule> = k
        .swaps()
        .iter()
        .map(|s| SwapRule { left: s.left, right: s.right, image: embed_left(&s.image, dh) })
        .collect();
    swaps.extend(h.swaps().iter().map(|s| SwapRule { left: s.left + kk, right: s.right + kk, image: s.image.clone() }));

    let k_delta2: Vec<Tensor3> = (0..kk).map(|p| k.delta2(&k.generator_monomial(p))).collect();
    let h_delta2: Vec<Tensor3> = (0..kh).map(|a| h.delta2(&h.generator_monomial(a))).collect();
    let pairs: Vec<(usize, usize)> = (0..kh).flat_map(|a| (0..kk).map(move |p| (a, p))).collect();
    let values: Vec<Vector> = pairs
        .par_iter()
        .map(|&(a, p)| cross_value(pairing, &h_delta2[a], &k_delta2[p], dh))
        .collect::<Result<_, _>>()?;
    for (&(a, p), v) in pairs.iter().zip(&values) {
        swaps.push(SwapRule { left: a + kk, right: p, image: v.clone() });
    }

    let mut defined: Vec<DefinedSymbol> = k
        .defined_symbols()
        .iter()
        .map(|d| DefinedSymbol {
            name: d.name.clone(),
            value: embed_left(&d.value, dh),
            delta: remap_tensor(&d.delta, &k_sym, true),
        })
        .collect();
    defined.extend(h.defined_symbols().iter().map(|d| DefinedSymbol {
        name: d.name.clone(),
        value: d.value.clone(),
        delta: remap_tensor(&d.delta, &h_sym, false),
    }));

    let name = format!("D({})", h.name());
    let double = Arc::new(PresentedHopfAlgebra::from_specs(
        &name,
        h.conductor(),
        gens,
        swaps,
        defined,
        Some(dh * dh),
    )?);
    let cross_relations = pairs
        .iter()
        .zip(values)
        .map(|(&(a, p), v)| CrossRelation {
            h_generator: h.generator(a).name.clone(),
            dual_generator: k.generator(p).name.clone(),
            value: HopfElement::new(&double, v),
        })
        .collect();
    Ok(DoubleBuildResult { double, cross_relations, dual_dim: dk, h_dim: dh, dual_gens: kk })
}

/// Itemized comparison of a built double with a printed presentation.
#[derive(Clone, Debug, Serialize)]
pub struct ComparisonReport {
    pub dimensions: (usize, usize),
    pub checks: Vec<AxiomCheck>,
}

impl ComparisonReport {
    pub fn passed(&self) -> bool {
        self.dimensions.0 == self.dimensions.1 && self.checks.iter().all(|c| c.passed)
    }
}

fn check(name: &str, checked: usize, failures: Vec<String>) -> AxiomCheck {
    let total = failures.len();
    let mut shown: Vec<String> = failures.into_iter().take(MAX_REPORTED).collect();
    if total > MAX_REPORTED {
        shown.push(format!("... {} more", total - MAX_REPORTED));
    }
    AxiomCheck { name: name.to_string(), passed: total == 0, checked, failures: shown }
}

/// Rewrites `v` from `from` into `to`, matching generators by name.
pub fn transfer(from: &PresentedHopfAlgebra, to: &PresentedHopfAlgebra, v: &Vector) -> Result<Vector, HopfError> {
    let map = generator_map(from, to)?;
    let mut out = Vector::new();
    for (m, c) in v {
        let letters: Vec<usize> = from.letters(*m).into_iter().map(|g| map[g]).collect();
        out.axpy(c, &to.mul_letters(&to.one(), &letters));
    }
    Ok(out)
}

fn transfer2(from: &PresentedHopfAlgebra, to: &PresentedHopfAlgebra, t: &Tensor2) -> Result<Tensor2, HopfError> {
    let map = generator_map(from, to)?;
    let word = |m: Mono| -> Vector {
        let letters: Vec<usize> = from.letters(m).into_iter().map(|g| map[g]).collect();
        to.mul_letters(&to.one(), &letters)
    };
    let mut out = Tensor2::new();
    for ((a, b), c) in t {
        crate::hopf::outer(&word(*a), &word(*b), c, &mut out);
    }
    Ok(out)
}

fn generator_map(from: &PresentedHopfAlgebra, to: &PresentedHopfAlgebra) -> Result<Vec<usize>, HopfError> {
    from.generators()
        .iter()
        .map(|g| {
            to.generator_index(&g.name)
                .ok_or_else(|| HopfError::Invalid(format!("generator {:?} missing from {}", g.name, to.name())))
        })
        .collect()
}

/// Evaluates `"lhs = rhs"` in `alg` and returns `lhs − rhs`.
pub fn relation_residual(alg: &PresentedHopfAlgebra, rel: &str, vars: &[(&str, CycloNum)]) -> Result<Vector, HopfError> {
    let (lhs, rhs) = rel
        .split_once('=')
        .ok_or_else(|| HopfError::Parse(format!("relation {rel:?} has no '='")))?;
    Ok(alg.parse_element(lhs, vars)?.sub(&alg.parse_element(rhs, vars)?))
}

/// Every printed relation holds in the built double, every derived cross
/// relation holds in the printed presentation, and generators have the same
/// coproduct, counit and antipode in both.
pub fn matches_paper_presentation(result: &DoubleBuildResult, fixture: &DoubleFixture) -> ComparisonReport {
    let d = &*result.double;
    let f = &fixture.presentation;
    let vars = fixture.scope_vars();

    let mut failures = Vec::new();
    for rel in &fixture.relations {
        match relation_residual(d, rel, &vars) {
            Ok(r) if r.is_zero() => {}
            Ok(r) => failures.push(format!("{rel}: off by {}", d.format_vector(&r))),
            Err(e) => failures.push(format!("{rel}: {e}")),
        }
    }
    let printed = check("printed relations hold in the double", fixture.relations.len(), failures);

    let mut failures = Vec::new();
    for cr in &result.cross_relations {
        let outcome = (|| -> Result<Option<String>, HopfError> {
            let a = f.generator_index(&cr.h_generator).ok_or_else(|| HopfError::Invalid(cr.h_generator.clone()))?;
            let p = f.generator_index(&cr.dual_generator).ok_or_else(|| HopfError::Invalid(cr.dual_generator.clone()))?;
            let lhs = f.mul_letters(&f.one(), &[a, p]);
            let rhs = transfer(d, f, cr.value.vector())?;
            Ok((lhs != rhs).then(|| {
                format!(
                    "{}*{} = {} in the double but {} as printed",
                    cr.h_generator,
                    cr.dual_generator,
                    d.format_vector(cr.value.vector()),
                    f.format_vector(&lhs)
                )
            }))
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(msg)) => failures.push(msg),
            Err(e) => failures.push(format!("{}*{}: {e}", cr.h_generator, cr.dual_generator)),
        }
    }
    let converse = check("derived cross relations hold as printed", result.cross_relations.len(), failures);

    let mut failures = Vec::new();
    for spec in f.generators() {
        let outcome = (|| -> Result<Vec<String>, HopfError> {
            let dg = d.generator_index(&spec.name).ok_or_else(|| HopfError::Invalid(spec.name.clone()))?;
            let mut out = Vec::new();
            if transfer2(f, d, &spec.delta)? != d.generator(dg).delta {
                out.push(format!("Δ({}) differs", spec.name));
            }
            if spec.epsilon != d.generator(dg).epsilon {
                out.push(format!("ε({}) differs", spec.name));
            }
            if transfer(f, d, &spec.antipode)? != d.generator(dg).antipode {
                out.push(format!("S({}) differs", spec.name));
            }
            Ok(out)
        })();
        match outcome {
            Ok(v) => failures.extend(v),
            Err(e) => failures.push(format!("generator {}: {e}", spec.name)),
        }
    }
    let coalgebra = check("coalgebra data on generators", f.num_generators(), failures);

    ComparisonReport { dimensions: (d.dimension(), f.dimension()), checks: vec![printed, converse, coalgebra] }
}
