use std::collections::BTreeSet;
use std::sync::Arc;

use hopfdouble::catalog::{Family, HnParams};
use hopfdouble::cyclotomic::{gcd, q_int, CycloNum};
use hopfdouble::double::{build_double, DoubleBuildResult};
use hopfdouble::hopf::HopfElement;
use hopfdouble::linalg::Matrix;
use hopfdouble::modalg::{
    action_of, classify_actions, extend_to_double, is_inner_faithful, verify_action, ActionFamily, ClassificationReport,
    CyclicAlgebra, ModuleAlgebraAction,
};
use hopfdouble::pairing::DualityPairing;

fn z(m: u32, k: i64) -> CycloNum {
    CycloNum::root_of_unity(m, k)
}

fn int(m: u32, v: i64) -> CycloNum {
    CycloNum::from_int(m, v)
}

fn double_of(family: Family) -> DoubleBuildResult {
    build_double(&DualityPairing::for_family(&family).unwrap()).unwrap()
}

/// `s · u` as coefficients of `1, u, …, u^{n−1}`.
fn image(act: &ModuleAlgebraAction, s: &str) -> Vec<CycloNum> {
    let m = act.matrix(s).unwrap_or_else(|| panic!("no generator {s}"));
    (0..m.rows()).map(|r| m[(r, 1)].clone()).collect()
}

fn monomial(conductor: u32, n: u32, e: u32, c: CycloNum) -> Vec<CycloNum> {
    let mut v = vec![CycloNum::zero(conductor); n as usize];
    v[e as usize] = c;
    v
}

fn only_family(r: &ClassificationReport) -> &ActionFamily {
    assert_eq!(r.families.len(), 1, "{}: {:#?}", r.algebra, r.families);
    &r.families[0]
}

fn taft_action(n: u32, k: u32, gamma: CycloNum) -> ModuleAlgebraAction {
    let r = classify_actions(&Family::Taft { n, k }).unwrap();
    only_family(&r).instantiate(&[("θ_x", gamma)]).unwrap()
}

#[test]
fn taft_action_verifies() {
    let act = taft_action(3, 1, int(3, 1));
    let report = verify_action(&act);
    assert!(report.passed(), "{report:#?}");
    assert_eq!(image(&act, "x"), monomial(3, 3, 0, int(3, 1)));
}

#[test]
fn wrong_degree_fails_relations() {
    let alg = Arc::new(Family::Taft { n: 3, k: 1 }.build().unwrap());
    let target = CyclicAlgebra::standard(3, 3);
    let act = ModuleAlgebraAction::from_monomial_images(alg, target, &[("g", 1, z(3, -1)), ("x", 1, int(3, 1))]).unwrap();
    let report = verify_action(&act);
    let rel = report.check("relations").unwrap();
    assert!(!rel.passed);
    assert!(rel.failures.iter().any(|f| f.contains("x^3")), "{:?}", rel.failures);
    // x keeps the degree here, so x³ cannot act as zero
    let x = act.matrix("x").unwrap();
    assert!(!x.mul(x).mul(x).is_zero());
}

#[test]
fn t421_action_with_gamma_one_plus_i() {
    let r = classify_actions(&Family::T421 { k: 1 }).unwrap();
    let fam = only_family(&r);
    assert_eq!(fam.constraints.len(), 1);
    assert_eq!(fam.constraints[0].text, "θ_x^2 - 2*z = 0");
    let gamma = &int(4, 1) + &z(4, 1);
    let act = fam.instantiate(&[("θ_x", gamma.clone())]).unwrap();
    assert!(verify_action(&act).passed());
    assert_eq!(image(&act, "x"), monomial(4, 4, 3, gamma));
    assert!(fam.instantiate(&[("θ_x", int(4, 1))]).is_err());
}

#[test]
fn action_of_grouplike_is_diagonal() {
    let alg = Arc::new(Family::Taft { n: 3, k: 1 }.build().unwrap());
    let q = z(3, 1);
    let act = ModuleAlgebraAction::from_monomial_images(
        alg.clone(),
        CyclicAlgebra::standard(3, 3),
        &[("g", 1, q.clone()), ("x", 0, CycloNum::zero(3))],
    )
    .unwrap();
    let g = action_of(&act, &HopfElement::generator(&alg, "g").unwrap()).unwrap();
    let mut expected = Matrix::zeros(3, 3, 3);
    for p in 0..3 {
        expected[(p, p)] = q.pow(p as i64).unwrap();
    }
    assert_eq!(g, expected);
    let g2 = action_of(&act, &HopfElement::parse(&alg, "g^2 + 1").unwrap()).unwrap();
    for p in 0..3 {
        assert_eq!(g2[(p, p)], &q.pow(2 * p as i64).unwrap() + &int(3, 1));
    }
    let other = Arc::new(Family::Taft { n: 3, k: 2 }.build().unwrap());
    assert!(action_of(&act, &HopfElement::generator(&other, "g").unwrap()).is_err());
}

#[test]
fn faithfulness() {
    let f = is_inner_faithful(&taft_action(3, 1, int(3, 2))).unwrap();
    assert!(f.faithful);
    assert!(f.witness.is_none());

    let alg = Arc::new(Family::Taft { n: 3, k: 1 }.build().unwrap());
    let act = ModuleAlgebraAction::from_monomial_images(
        alg,
        CyclicAlgebra::standard(3, 3),
        &[("g", 1, z(3, -1)), ("x", 0, CycloNum::zero(3))],
    )
    .unwrap();
    assert!(verify_action(&act).passed());
    let f = is_inner_faithful(&act).unwrap();
    assert!(!f.faithful);
    assert_eq!(f.witness.as_deref(), Some("x"));

    let r = classify_actions(&Family::Uq { n: 3, k: 1 }).unwrap();
    let act = only_family(&r).sample_action(5, &[]).unwrap();
    assert!(is_inner_faithful(&act).unwrap().faithful);
}

#[test]
fn classify_taft_one_free_parameter() {
    for (n, k) in [(2, 1), (3, 1), (3, 2), (4, 1), (5, 2)] {
        let r = classify_actions(&Family::Taft { n, k }).unwrap();
        let fam = only_family(&r);
        assert_eq!(fam.parameters, vec!["θ_x".to_string()]);
        assert_eq!(fam.parameter_dimension, 1);
        assert!(fam.constraints.is_empty() && fam.unsolved.is_empty());
        assert_eq!(fam.status_of("θ_x"), Some("free nonzero"));
        let act = fam.instantiate(&[("θ_x", int(n, 7))]).unwrap();
        assert_eq!(image(&act, "x"), monomial(n, n, 0, int(n, 7)));
        assert!(!r.certificates.is_empty());
    }
}

#[test]
fn classify_hnzmt_examples() {
    let r = classify_actions(&Family::Hnzmt(HnParams::new(8, 1, 2, 2).unwrap())).unwrap();
    assert!(r.is_empty());
    assert!(r.certificates.iter().any(|c| c.reason.contains("nonzero constant")));

    let r = classify_actions(&Family::Hnzmt(HnParams::new(12, 1, 4, 2).unwrap())).unwrap();
    let fam = only_family(&r);
    assert_eq!(fam.parameter_dimension, 1);
    let act = fam.instantiate(&[("θ_x", int(12, 3))]).unwrap();
    assert_eq!(image(&act, "x"), monomial(12, 12, 3, int(12, 3)));
    assert_eq!(image(&act, "y"), monomial(12, 12, 1, z(12, 1)));
}

#[test]
fn classify_uq_product_constraint() {
    for (n, k) in [(3, 1), (5, 1), (5, 2)] {
        let r = classify_actions(&Family::Uq { n, k }).unwrap();
        let fam = only_family(&r);
        let q = z(n, k as i64);
        for seed in 0..3 {
            let act = fam.sample_action(seed, &[]).unwrap();
            let f = image(&act, "F");
            let e = image(&act, "E");
            assert!(!f[0].is_zero() && !e[2].is_zero());
            assert_eq!(&f[0] * &e[2], -&q, "uq({n},{k})");
            assert!(verify_action(&act).passed());
        }
    }
}

#[test]
fn hnzmt_existence_matches_gcd_criterion() {
    let mut checked = 0;
    for n in 2..=12u32 {
        for m in (1..=n).filter(|m| n % m == 0) {
            for t in (1..=n).filter(|t| n % t == 0) {
                let Ok(p) = HnParams::new(n, 1, m, t) else { continue };
                let r = classify_actions(&Family::Hnzmt(p)).unwrap();
                let expected = gcd(t as u64, (n / m) as u64) == 1;
                assert_eq!(!r.is_empty(), expected, "{}", p.label());
                if expected {
                    let fam = only_family(&r);
                    let act = fam.sample_action(1, &[]).unwrap();
                    let x = image(&act, "x");
                    let e = (t + 1) % n;
                    assert!(!x[e as usize].is_zero(), "{}: {:?}", p.label(), fam.action);
                } else {
                    assert!(!r.certificates.is_empty());
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 40);
}

#[test]
fn instantiated_families_verify() {
    let hints = [&int(4, 1) + &z(4, 1)];
    let families = [
        Family::Taft { n: 4, k: 3 },
        Family::Hnzmt(HnParams::new(12, 1, 4, 2).unwrap()),
        Family::Hnzmt(HnParams::new(6, 1, 2, 1).unwrap()),
        Family::T421 { k: 1 },
        Family::Uq { n: 3, k: 1 },
    ];
    for family in families {
        let r = classify_actions(&family).unwrap();
        for fam in &r.families {
            for seed in [11, 12, 13] {
                let act = fam.sample_action(seed, &hints).unwrap();
                let report = verify_action(&act);
                assert!(report.passed(), "{family:?} seed {seed}: {report:#?}");
            }
        }
    }
}

/// `x^j · u^p = γ^j ∏_{i<j} (p + it)_{ζ^m} u^{p+jt}`.
#[test]
fn hnzmt_power_closed_form() {
    for (n, m, t) in [(12, 4, 2), (4, 2, 1), (6, 2, 1), (9, 3, 1)] {
        let p = HnParams::new(n, 1, m, t).unwrap();
        let r = classify_actions(&Family::Hnzmt(p)).unwrap();
        let gamma = &int(n, 2) + &z(n, 1);
        let act = only_family(&r).instantiate(&[("θ_x", gamma.clone())]).unwrap();
        let qm = z(n, m as i64);
        let x = act.matrix("x").unwrap();
        let big_n = p.big_n();
        let mut power = Matrix::identity(n, n as usize);
        for j in 1..=big_n {
            power = power.mul(x);
            for col in 0..n {
                let mut coeff = gamma.pow(j as i64).unwrap();
                for i in 0..j {
                    coeff = &coeff * &q_int(col + i * t, &qm);
                }
                let row = ((col + j * t) % n) as usize;
                for r in 0..n as usize {
                    let want = if r == row { coeff.clone() } else { CycloNum::zero(n) };
                    assert_eq!(power[(r, col as usize)], want, "{} x^{j} on u^{col}", p.label());
                }
            }
        }
        assert!(power.is_zero(), "x^N acts as zero");
    }
}

/// All actions with `g · u = λu` and `x · u = c u^e`. For the fixed grading
/// `λ₀`, the others come from `u ↦ u^j` with `j` a unit mod `n`.
#[test]
fn taft_brute_force_oracle() {
    for (n, k) in [(2u32, 1u32), (3, 1), (3, 2)] {
        let alg = Arc::new(Family::Taft { n, k }.build().unwrap());
        let lambda0 = Family::Taft { n, k }.grading().eigenvalue;
        let mut found: BTreeSet<(i64, u32)> = BTreeSet::new();
        for l in 0..n as i64 {
            let lambda = z(n, l);
            for e in 0..n {
                for c in [int(n, 1), int(n, 2), z(n, 1)] {
                    let act = ModuleAlgebraAction::from_monomial_images(
                        alg.clone(),
                        CyclicAlgebra::standard(n, n),
                        &[("g", 1, lambda.clone()), ("x", e, c)],
                    )
                    .unwrap();
                    if verify_action(&act).passed() && is_inner_faithful(&act).unwrap().faithful {
                        found.insert((l, e));
                    }
                }
            }
        }
        let mut expected = BTreeSet::new();
        for j in (1..n).filter(|&j| gcd(j as u64, n as u64) == 1) {
            let jinv = (1..n).find(|&i| (i * j) % n == 1).unwrap();
            let lambda = lambda0.pow(j as i64).unwrap();
            let l = (0..n as i64).find(|&l| z(n, l) == lambda).unwrap();
            expected.insert((l, ((j + n - 1) * jinv) % n));
        }
        assert_eq!(found, expected, "T_{n}(ζ^{k})");

        let r = classify_actions(&Family::Taft { n, k }).unwrap();
        let fam = only_family(&r);
        for c in [int(n, 1), int(n, 2), z(n, 1)] {
            let act = fam.instantiate(&[("θ_x", c.clone())]).unwrap();
            assert_eq!(image(&act, "g"), monomial(n, n, 1, lambda0.clone()));
            assert_eq!(image(&act, "x"), monomial(n, n, 0, c));
        }
    }
}

#[test]
fn rescaling_preserves_axioms() {
    let act = taft_action(4, 1, int(4, 3));
    for c in [int(4, 2), &int(4, 1) + &z(4, 1), z(4, 1)] {
        let r = act.rescaled(&c).unwrap();
        assert_eq!(r.target().beta(), &c.pow(4).unwrap());
        assert!(verify_action(&r).passed());
        assert!(is_inner_faithful(&r).unwrap().faithful);
    }
    let t = classify_actions(&Family::T421 { k: 1 }).unwrap();
    let act = only_family(&t).instantiate(&[("θ_x", &int(4, 1) + &z(4, 1))]).unwrap();
    let r = act.rescaled(&int(4, 3)).unwrap();
    assert!(verify_action(&r).passed());
}

#[test]
fn extend_taft_matches_printed_action() {
    // T_3(ζ^2) with our gx = q'xg is the Taft algebra with xg = qgx, q = ζ.
    let q = z(3, 1);
    let qinv = z(3, -1);
    let act = taft_action(3, 2, int(3, 1));
    assert_eq!(image(&act, "g"), monomial(3, 3, 1, q.clone()));
    let e = extend_to_double(&act, &double_of(Family::Taft { n: 3, k: 2 })).unwrap();
    let fam = only_family(&e);
    assert_eq!(fam.parameter_dimension, 0);
    let ext = fam.sample_action(0, &[]).unwrap();
    assert!(verify_action(&ext).passed());
    assert_eq!(image(&ext, "G"), monomial(3, 3, 1, qinv.clone()));
    assert_eq!(image(&ext, "X"), monomial(3, 3, 2, &qinv - &int(3, 1)));

    let act = taft_action(5, 1, int(5, 1));
    let e = extend_to_double(&act, &double_of(Family::Taft { n: 5, k: 1 })).unwrap();
    assert_eq!(only_family(&e).parameter_dimension, 0);
}

#[test]
fn extend_sweedler_free_parameter() {
    let act = taft_action(2, 1, int(2, 3));
    let e = extend_to_double(&act, &double_of(Family::Taft { n: 2, k: 1 })).unwrap();
    let fam = only_family(&e);
    assert_eq!(fam.parameters, vec!["θ_X".to_string()]);
    assert_eq!(fam.parameter_dimension, 1);
    for delta in [int(2, 0), int(2, 1), int(2, -5)] {
        let ext = fam.instantiate(&[("θ_X", delta.clone())]).unwrap();
        assert!(verify_action(&ext).passed());
        assert_eq!(image(&ext, "X"), monomial(2, 2, 0, delta));
        assert_eq!(image(&ext, "G"), monomial(2, 2, 1, int(2, -1)));
    }
}

#[test]
fn extend_hnzmt() {
    let p = HnParams::new(12, 1, 4, 2).unwrap();
    let r = classify_actions(&Family::Hnzmt(p)).unwrap();
    let gamma = &int(12, 1) + &z(12, 3);
    let act = only_family(&r).instantiate(&[("θ_x", gamma.clone())]).unwrap();
    let e = extend_to_double(&act, &double_of(Family::Hnzmt(p))).unwrap();
    assert_eq!(e.families.len(), 2);
    let zm = z(12, p.m as i64);
    let target = &(&zm.inverse().unwrap() - &int(12, 1)) * &q_int(p.n - p.t, &zm).inverse().unwrap();
    let mut y_images = Vec::new();
    for fam in &e.families {
        assert_eq!(fam.parameter_dimension, 0);
        let ext = fam.sample_action(0, &[]).unwrap();
        assert!(verify_action(&ext).passed());
        let x = image(&ext, "X");
        let e = (1 + p.n - p.t) as usize;
        assert_eq!(&gamma * &x[e], target);
        y_images.push(image(&ext, "Y"));
    }
    assert_ne!(y_images[0], y_images[1]);

    let p = HnParams::new(4, 1, 2, 1).unwrap();
    let r = classify_actions(&Family::Hnzmt(p)).unwrap();
    let act = only_family(&r).instantiate(&[("θ_x", int(4, 1))]).unwrap();
    let e = extend_to_double(&act, &double_of(Family::Hnzmt(p))).unwrap();
    let fam = only_family(&e);
    assert_eq!(fam.parameter_dimension, 1);
    for seed in 0..3 {
        assert!(verify_action(&fam.sample_action(seed, &[]).unwrap()).passed());
    }
}

#[test]
fn extend_t421_is_impossible() {
    let r = classify_actions(&Family::T421 { k: 1 }).unwrap();
    let act = only_family(&r).instantiate(&[("θ_x", &int(4, 1) + &z(4, 1))]).unwrap();
    let e = extend_to_double(&act, &double_of(Family::T421 { k: 1 })).unwrap();
    assert!(e.is_empty());
    // δ = 0 forces η² = ζ, which no fourth root of unity satisfies
    let cert = e.certificates.iter().find(|c| c.case == "θ_X = 0, θ_G ≠ 0").unwrap();
    assert!(cert.equations.iter().any(|eq| eq.starts_with("θ_G^4 - 1 = 0")));
    assert!(cert.equations.iter().any(|eq| eq.starts_with("-θ_G^2 + z = 0")));
}

#[test]
fn extend_uq_two_families() {
    let q = z(3, 1);
    let r = classify_actions(&Family::Uq { n: 3, k: 1 }).unwrap();
    let act = only_family(&r).instantiate(&[("θ_F", int(3, 1))]).unwrap();
    assert_eq!(image(&act, "E"), monomial(3, 3, 2, -&q));
    let e = extend_to_double(&act, &double_of(Family::Uq { n: 3, k: 1 })).unwrap();
    assert_eq!(e.families.len(), 2);
    let diff = &q - &q.inverse().unwrap();
    let zero = || monomial(3, 3, 0, CycloNum::zero(3));
    let mut seen = [false, false];
    for fam in &e.families {
        let ext = fam.sample_action(0, &[]).unwrap();
        assert!(verify_action(&ext).passed());
        let (b, c) = (image(&ext, "b"), image(&ext, "c"));
        if c == zero() {
            assert_eq!(b, monomial(3, 3, 0, diff.clone()));
            seen[0] = true;
        } else {
            assert_eq!(b, zero());
            assert_eq!(c, monomial(3, 3, 2, diff.clone()));
            seen[1] = true;
        }
    }
    assert_eq!(seen, [true, true]);
}

#[test]
fn extend_uq_n5_two_families() {
    let r = classify_actions(&Family::Uq { n: 5, k: 1 }).unwrap();
    let act = only_family(&r).instantiate(&[("θ_F", int(5, 1))]).unwrap();
    let e = extend_to_double(&act, &double_of(Family::Uq { n: 5, k: 1 })).unwrap();
    assert_eq!(e.families.len(), 2);
    for fam in &e.families {
        assert_eq!(fam.parameter_dimension, 0);
    }
}

#[test]
fn extension_rejects_invalid_action() {
    let alg = Arc::new(Family::Taft { n: 3, k: 1 }.build().unwrap());
    let act = ModuleAlgebraAction::from_monomial_images(alg, CyclicAlgebra::standard(3, 3), &[("g", 1, z(3, -1)), ("x", 1, int(3, 1))])
        .unwrap();
    assert!(extend_to_double(&act, &double_of(Family::Taft { n: 3, k: 1 })).is_err());
}
