use std::collections::BTreeMap;
use std::sync::LazyLock;

use proptest::prelude::*;

use hopfdouble::catalog::{hnzmt, hnzmt_dual, oq_sl2_bar, t421, t421_dual, taft, taft_dual, uqsl2, HnParams};
use hopfdouble::cyclotomic::{bracket_factorial, gcd, q_binom, q_factorial, q_int, CycloNum};
use hopfdouble::hopf::{Mono, PresentedHopfAlgebra, Tensor2, Vector};

fn z(m: u32, k: i64) -> CycloNum {
    CycloNum::root_of_unity(m, k)
}

/// All roots of unity of conductor at most 12, paired with their order.
fn roots() -> Vec<(u32, CycloNum)> {
    let mut out = Vec::new();
    for m in 1..=12u32 {
        for k in 0..m {
            let order = m / gcd(k as u64, m as u64) as u32;
            out.push((order, z(m, k as i64)));
        }
    }
    out
}

fn element() -> impl Strategy<Value = CycloNum> {
    (1u32..=12).prop_flat_map(|m| {
        prop::collection::vec((-6i64..=6, 1i64..=4), m as usize).prop_map(move |cs| {
            let mut acc = CycloNum::zero(m);
            for (k, (num, den)) in cs.into_iter().enumerate() {
                let c = CycloNum::from_fraction(m, num, den).unwrap();
                acc += &(&c * &z(m, k as i64));
            }
            acc
        })
    })
}

fn same_field(m: u32) -> impl Strategy<Value = CycloNum> {
    prop::collection::vec((-6i64..=6, 1i64..=4), m as usize).prop_map(move |cs| {
        let mut acc = CycloNum::zero(m);
        for (k, (num, den)) in cs.into_iter().enumerate() {
            acc += &(&CycloNum::from_fraction(m, num, den).unwrap() * &z(m, k as i64));
        }
        acc
    })
}

fn triple() -> impl Strategy<Value = (CycloNum, CycloNum, CycloNum)> {
    (1u32..=12).prop_flat_map(|m| (same_field(m), same_field(m), same_field(m)))
}

proptest! {
    #[test]
    fn field_axioms((a, b, c) in triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
            prop_assert_eq!((&b * &a).try_div(&a).unwrap(), b);
        }
    }

    #[test]
    fn normal_form_is_canonical(a in element()) {
        let text = a.to_string();
        let back = CycloNum::parse(a.conductor(), &text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(back.to_string(), text);
        let m = a.conductor();
        let lifted = a.embed_to_conductor(2 * m).unwrap();
        prop_assert_eq!(lifted.embed_to_conductor(6 * m).unwrap(), a.embed_to_conductor(6 * m).unwrap());
    }
}

#[test]
fn q_integers_are_periodic() {
    for (order, q) in roots().into_iter().filter(|(o, _)| *o > 1) {
        for p in 1..=3 * order {
            let r = (p - 1) % order + 1;
            assert_eq!(q_int(p, &q), q_int(r, &q), "{q:?} p={p}");
        }
    }
}

#[test]
fn q_integers_at_inverse_root() {
    // (p)_{q^-1} = -q (m-p)_q whenever ord(q) | m, q ≠ 1
    for (order, q) in roots().into_iter().filter(|(o, _)| *o > 1) {
        let qi = q.inverse().unwrap();
        for m in (order..=24).step_by(order as usize) {
            for p in 0..=m {
                assert_eq!(q_int(p, &qi), -(&q * &q_int(m - p, &q)), "{q:?} m={m} p={p}");
            }
        }
    }
}

#[test]
fn q_integer_vanishing_sweep() {
    for (order, q) in roots().into_iter().filter(|(o, _)| *o > 1) {
        for n in 0..=24 {
            assert_eq!(q_int(n, &q).is_zero(), n % order == 0, "{q:?} n={n}");
        }
    }
}

#[test]
fn bracket_factorial_identity() {
    // [n]_q! = q^{-n(n-1)/2} (n)_{q^2}!
    for (_, q) in roots().into_iter().filter(|(o, _)| *o > 2) {
        let q2 = &q * &q;
        for n in 0..=8u32 {
            let rhs = &q.pow(-((n * n.saturating_sub(1)) as i64) / 2).unwrap() * &q_factorial(n, &q2);
            assert_eq!(bracket_factorial(n, &q).unwrap(), rhs, "{q:?} n={n}");
        }
    }
}

fn taft_params() -> impl Strategy<Value = (u32, u32)> {
    (2u32..=8).prop_flat_map(|n| {
        let units: Vec<u32> = (1..n).filter(|k| gcd(*k as u64, n as u64) == 1).collect();
        (Just(n), prop::sample::select(units))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `Δ(x) = g⊗x + x⊗1` and `(g⊗x)(x⊗1) = q (x⊗1)(g⊗x)`, so `Δ(x^p)` is
    /// the skew binomial expansion.
    #[test]
    fn skew_binomial_in_the_tensor_square((n, k) in taft_params(), p in 1u32..=6) {
        let h = taft(n, k).unwrap();
        let q = z(n, k as i64);
        let x = h.generator_monomial(0);
        let lhs = h.delta(&h.pow(&x, p));
        let mut rhs = Tensor2::new();
        for m in 0..=p {
            let left = h.parse_element(&format!("x^{m}*g^{}", p - m), &[]).unwrap();
            let right = h.pow(&x, p - m);
            let coeff = q_binom(p, m, &q);
            for (a, c) in &left {
                for (b, d) in &right {
                    rhs.add_term_owned((*a, *b), &(&coeff * c) * d);
                }
            }
        }
        prop_assert_eq!(lhs, rhs);
    }
}

/// Rewrites a free word to normal form by repeatedly resolving the leftmost
/// out-of-order pair, then the leftmost over-long power.
fn naive_normal_form(h: &PresentedHopfAlgebra, word: &[usize]) -> BTreeMap<Vec<usize>, CycloNum> {
    let mut todo = vec![(word.to_vec(), CycloNum::one(h.conductor()))];
    let mut done: BTreeMap<Vec<usize>, CycloNum> = BTreeMap::new();
    while let Some((w, c)) = todo.pop() {
        if let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) {
            let rule = h.swaps().iter().find(|s| s.left == w[i] && s.right == w[i + 1]).expect("swap rule for each pair");
            push_replaced(h, &mut todo, &w, i, 2, &rule.image, &c);
            continue;
        }
        let over = (0..w.len()).find(|&i| {
            let b = h.generator(w[i]).bound as usize;
            i + b <= w.len() && w[i..i + b].iter().all(|&l| l == w[i])
        });
        if let Some(i) = over {
            let b = h.generator(w[i]).bound as usize;
            push_replaced(h, &mut todo, &w, i, b, &h.generator(w[i]).power_image.clone(), &c);
            continue;
        }
        let entry = done.entry(w).or_insert_with(|| CycloNum::zero(h.conductor()));
        *entry += &c;
    }
    done.retain(|_, c| !c.is_zero());
    done
}

fn push_replaced(
    h: &PresentedHopfAlgebra,
    todo: &mut Vec<(Vec<usize>, CycloNum)>,
    w: &[usize],
    at: usize,
    len: usize,
    image: &Vector,
    c: &CycloNum,
) {
    for (m, d) in image {
        let mut next = w[..at].to_vec();
        next.extend(h.letters(*m));
        next.extend_from_slice(&w[at + len..]);
        todo.push((next, c * d));
    }
}

fn words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<usize>| (0..k).map(move |g| [w.clone(), vec![g]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn normalization_agrees_with_naive_rewriting() {
    for h in [taft(3, 1).unwrap(), t421(1).unwrap(), uqsl2(3, 1).unwrap()] {
        let one = h.one();
        for w in words(h.num_generators(), 4) {
            let fast = h.mul_letters(&one, &w);
            let fast: BTreeMap<Vec<usize>, CycloNum> = fast.iter().map(|(m, c)| (h.letters(*m), c.clone())).collect();
            assert_eq!(fast, naive_normal_form(&h, &w), "{} on {w:?}", h.name());
        }
        // normalizing a normal monomial returns it unchanged
        for m in 0..h.dimension() as Mono {
            let v = h.mul_letters(&one, &h.letters(m));
            assert_eq!(v, Vector::term(m, CycloNum::one(h.conductor())));
        }
    }
}

fn catalog() -> Vec<PresentedHopfAlgebra> {
    let mut out = Vec::new();
    for n in 2..=5 {
        out.push(taft(n, 1).unwrap());
        out.push(taft_dual(n, 1).unwrap());
    }
    for n in [4u32, 6, 8, 12] {
        let divisors: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
        for &m in &divisors {
            for &t in &divisors {
                if let Ok(p) = HnParams::new(n, 1, m, t) {
                    out.push(hnzmt(&p).unwrap());
                    out.push(hnzmt_dual(&p).unwrap());
                }
            }
        }
    }
    out.push(t421(1).unwrap());
    out.push(t421_dual(1).unwrap());
    for n in [3, 5] {
        out.push(uqsl2(n, 1).unwrap());
        out.push(oq_sl2_bar(n, 1).unwrap());
    }
    out
}

static CATALOG: LazyLock<Vec<PresentedHopfAlgebra>> = LazyLock::new(catalog);

fn delta_is_multiplicative(h: &PresentedHopfAlgebra, a: Mono, b: Mono) -> bool {
    h.delta(&h.mono_mul(a, b)) == h.tensor_mul(h.delta_mono(a), h.delta_mono(b))
}

#[test]
fn coproduct_is_multiplicative_on_small_algebras() {
    for h in CATALOG.iter().filter(|h| h.dimension() <= 100) {
        let d = h.dimension() as Mono;
        for a in 0..d {
            for b in 0..d {
                assert!(delta_is_multiplicative(h, a, b), "{}: {} {}", h.name(), h.format_mono(a), h.format_mono(b));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn coproduct_is_multiplicative_on_large_algebras(which in any::<prop::sample::Index>(), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let large: Vec<&PresentedHopfAlgebra> = CATALOG.iter().filter(|h| h.dimension() > 100).collect();
        prop_assume!(!large.is_empty());
        let h = which.get(&large);
        let d = h.dimension();
        prop_assert!(delta_is_multiplicative(h, a.index(d) as Mono, b.index(d) as Mono));
    }
}

#[test]
fn antipode_is_bijective() {
    for h in CATALOG.iter() {
        for m in 0..h.dimension() as Mono {
            let inv = h.antipode_inverse_mono(m).unwrap();
            assert_eq!(h.antipode(inv), Vector::term(m, CycloNum::one(h.conductor())), "{}", h.name());
        }
    }
}

#[test]
fn skew_primitives_satisfy_their_coproduct() {
    for h in CATALOG.iter().filter(|h| h.dimension() <= 64) {
        let groups = h.grouplikes();
        for &g in &groups {
            for &k in &groups {
                let gv = Vector::term(g, CycloNum::one(h.conductor()));
                let kv = Vector::term(k, CycloNum::one(h.conductor()));
                for phi in h.skew_primitive_space(g, k).unwrap() {
                    let mut expected = Tensor2::new();
                    hopfdouble::hopf::outer(&gv, &phi, &CycloNum::one(h.conductor()), &mut expected);
                    hopfdouble::hopf::outer(&phi, &kv, &CycloNum::one(h.conductor()), &mut expected);
                    assert_eq!(h.delta(&phi), expected, "{}", h.name());
                }
            }
        }
    }
}

#[test]
fn uq_coproduct_on_basis() {
    // Δ(K^l Ê^i F^j) with Ê = E K^{-1}
    let n = 3u32;
    let h = uqsl2(n, 1).unwrap();
    let q = z(n, 1);
    let q2 = &q * &q;
    let q2i = q2.inverse().unwrap();
    let basis = |l: i64, i: u32, j: u32| h.parse_element(&format!("K^{l}*(E*K^-1)^{i}*F^{j}"), &[]).unwrap();
    for l in 0..n as i64 {
        for i in 0..n {
            for j in 0..n {
                let mut expected = Tensor2::new();
                for s in 0..=i {
                    for t in 0..=j {
                        let c = &(&q_binom(i, s, &q2) * &q_binom(j, t, &q2i)) * &q.pow((2 * t * (i - s)) as i64).unwrap();
                        let left = basis(l - (s + t) as i64, i - s, j - t);
                        let right = basis(l, s, t);
                        hopfdouble::hopf::outer(&left, &right, &c, &mut expected);
                    }
                }
                assert_eq!(h.delta(&basis(l, i, j)), expected, "l={l} i={i} j={j}");
            }
        }
    }
}
