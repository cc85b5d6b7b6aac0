use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::CycloNum;

use super::presentation::PresentedHopfAlgebra;
use super::sparse::{Mono, Tensor2, Tensor3, Vector};

const MAX_REPORTED: usize = 5;
const SAMPLED_TRIPLES: usize = 64;

/// Outcome of one axiom family.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub algebra: String,
    pub dimension: usize,
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn collect(name: &str, results: Vec<Option<String>>) -> AxiomCheck {
    let checked = results.len();
    let failures: Vec<String> = results.into_iter().flatten().collect();
    let total = failures.len();
    let mut shown: Vec<String> = failures.into_iter().take(MAX_REPORTED).collect();
    if total > MAX_REPORTED {
        shown.push(format!("... {} more", total - MAX_REPORTED));
    }
    AxiomCheck { name: name.to_string(), passed: total == 0, checked, failures: shown }
}

impl PresentedHopfAlgebra {
    /// `(Δ ⊗ id)(t)` and `(id ⊗ Δ)(t)`.
    fn delta_legs(&self, t: &Tensor2) -> (Tensor3, Tensor3) {
        let mut left = Tensor3::new();
        let mut right = Tensor3::new();
        for ((a, b), c) in t {
            for ((x, y), d) in self.delta_mono(*a) {
                left.add_term_owned((*x, *y, *b), c * d);
            }
            for ((x, y), d) in self.delta_mono(*b) {
                right.add_term_owned((*a, *x, *y), c * d);
            }
        }
        (left, right)
    }

    /// Products `x_l x_r` for `l > r` and `x_g^{bound}` as letter sequences.
    fn defining_words(&self) -> Vec<Vec<usize>> {
        let k = self.num_generators();
        let mut out = Vec::new();
        for l in 0..k {
            for r in 0..l {
                out.push(vec![l, r]);
            }
        }
        for g in 0..k {
            out.push(vec![g; self.generator(g).bound as usize]);
        }
        out
    }

    fn relation_consistency(&self) -> AxiomCheck {
        let one = self.one();
        let mut results = Vec::new();
        for word in self.defining_words() {
            let value = self.mul_letters(&one, &word);
            let label: Vec<&str> = word.iter().map(|&g| self.generator(g).name.as_str()).collect();
            let label = label.join("*");
            let mut lhs_delta = Tensor2::term((0, 0), CycloNum::one(self.conductor()));
            let mut lhs_eps = CycloNum::one(self.conductor());
            let mut lhs_s = one.clone();
            for &g in &word {
                lhs_delta = self.tensor_mul(&lhs_delta, &self.generator(g).delta);
                lhs_eps = &lhs_eps * &self.generator(g).epsilon;
                lhs_s = self.mul(&self.generator(g).antipode, &lhs_s);
            }
            results.push((lhs_delta != self.delta(&value)).then(|| format!("coproduct does not respect {label}")));
            results.push((lhs_eps != self.counit(&value)).then(|| format!("counit does not respect {label}")));
            results.push((lhs_s != self.antipode(&value)).then(|| format!("antipode does not respect {label}")));
        }
        for d in self.defined_symbols() {
            let ok = self.eval_tensor(&d.delta).is_ok_and(|t| t == self.delta(&d.value));
            results.push((!ok).then(|| format!("coproduct of defined symbol {} disagrees with its value", d.name)));
        }
        for g in self.generators() {
            if let Some(t) = &g.delta_words {
                let ok = self.eval_tensor(t).is_ok_and(|t| t == g.delta);
                results.push((!ok).then(|| format!("symbolic coproduct of {} disagrees", g.name)));
            }
        }
        collect("relation consistency", results)
    }

    fn coassociativity(&self) -> AxiomCheck {
        let results = (0..self.dimension() as Mono)
            .into_par_iter()
            .map(|m| {
                let (l, r) = self.delta_legs(self.delta_mono(m));
                (l != r).then(|| format!("coassociativity fails on {}", self.format_mono(m)))
            })
            .collect();
        collect("coassociativity", results)
    }

    fn counit_laws(&self) -> AxiomCheck {
        let results = (0..self.dimension() as Mono)
            .into_par_iter()
            .map(|m| {
                let mut left = Vector::new();
                let mut right = Vector::new();
                for ((a, b), c) in self.delta_mono(m) {
                    left.add_term_owned(*b, c * &self.counit_mono(*a));
                    right.add_term_owned(*a, c * &self.counit_mono(*b));
                }
                let target = Vector::term(m, CycloNum::one(self.conductor()));
                (left != target || right != target).then(|| format!("counit law fails on {}", self.format_mono(m)))
            })
            .collect();
        collect("counit laws", results)
    }

    fn antipode_law(&self) -> AxiomCheck {
        let results = (0..self.dimension() as Mono)
            .into_par_iter()
            .map(|m| {
                let mut left = Vector::new();
                let mut right = Vector::new();
                for ((a, b), c) in self.delta_mono(m) {
                    let one = CycloNum::one(self.conductor());
                    let sb = Vector::term(*b, one.clone());
                    let sa = Vector::term(*a, one);
                    left.axpy(c, &self.mul(self.antipode_mono(*a), &sb));
                    right.axpy(c, &self.mul(&sa, self.antipode_mono(*b)));
                }
                let target = self.scalar(self.counit_mono(m));
                (left != target || right != target).then(|| format!("antipode law fails on {}", self.format_mono(m)))
            })
            .collect();
        collect("antipode law", results)
    }

    fn confluence(&self, seed: u64) -> AxiomCheck {
        let words = self.defining_words();
        let one = self.one();
        let images: Vec<Vector> = words.iter().map(|w| self.mul_letters(&one, w)).collect();
        let mut results: Vec<Option<String>> = (0..self.dimension() as Mono)
            .into_par_iter()
            .flat_map_iter(|m| {
                let mv = Vector::term(m, CycloNum::one(self.conductor()));
                words
                    .iter()
                    .zip(&images)
                    .map(|(w, img)| {
                        let stepwise = self.mul_letters(&mv, w);
                        let grouped = self.mul(&mv, img);
                        (stepwise != grouped).then(|| format!("overlap of {} with a defining word is not resolvable", self.format_mono(m)))
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = self.dimension() as Mono;
        for _ in 0..SAMPLED_TRIPLES {
            let (a, b, c) = (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim));
            let va = Vector::term(a, CycloNum::one(self.conductor()));
            let vc = Vector::term(c, CycloNum::one(self.conductor()));
            let left = self.mul(&self.mono_mul(a, b), &vc);
            let right = self.mul(&va, &self.mono_mul(b, c));
            results.push((left != right).then(|| {
                format!("({} {}) {} differs from its regrouping", self.format_mono(a), self.format_mono(b), self.format_mono(c))
            }));
        }
        collect("associativity", results)
    }

    fn dimension_check(&self) -> AxiomCheck {
        let result = match self.expected_dimension() {
            Some(d) if d != self.dimension() => {
                Some(format!("{} normal monomials, expected {d}", self.dimension()))
            }
            _ => None,
        };
        collect("dimension", vec![result])
    }

    /// Runs the full axiom suite; `seed` drives the sampled associativity triples.
    pub fn verify_axioms(&self, seed: u64) -> AxiomReport {
        AxiomReport {
            algebra: self.name().to_string(),
            dimension: self.dimension(),
            checks: vec![
                self.relation_consistency(),
                self.coassociativity(),
                self.counit_laws(),
                self.antipode_law(),
                self.confluence(seed),
                self.dimension_check(),
            ],
        }
    }
}
