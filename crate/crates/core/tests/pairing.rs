use std::sync::Arc;

use hopfdouble::catalog::{Family, HnParams};
use hopfdouble::cyclotomic::{gcd, q_factorial, CycloNum};
use hopfdouble::hopf::{HopfElement, HopfError};
use hopfdouble::pairing::{dual_basis_identities, DualityPairing};

fn hn_families(n: u32) -> Vec<HnParams> {
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut out = Vec::new();
    for &m in &divisors {
        for &t in &divisors {
            for k in (1..n).filter(|k| gcd(*k as u64, n as u64) == 1) {
                if let Ok(p) = HnParams::new(n, k, m, t) {
                    out.push(p);
                }
            }
        }
    }
    out
}

#[test]
fn hnzmt_pairing_matches_closed_form() {
    for n in 2..=6 {
        for p in hn_families(n) {
            let pairing = DualityPairing::for_family(&Family::Hnzmt(p)).unwrap();
            let (k, h) = (pairing.left().clone(), pairing.right().clone());
            let q = p.q();
            let zeta = p.zeta();
            for u in 0..k.dimension() as u32 {
                let [i, j] = <[u32; 2]>::try_from(k.exponents(u)).unwrap();
                for x in 0..h.dimension() as u32 {
                    let [kk, l] = <[u32; 2]>::try_from(h.exponents(x)).unwrap();
                    let expected = if i == kk {
                        &q_factorial(i, &q) * &zeta.pow((j * l) as i64).unwrap()
                    } else {
                        CycloNum::zero(n)
                    };
                    assert_eq!(pairing.pair_mono(u, x).unwrap(), expected, "{} at X^{i}Y^{j}, x^{kk}y^{l}", p.label());
                }
            }
            let report = pairing.verify_duality_axioms(3).unwrap();
            assert!(report.passed(), "{}: {:?}", p.label(), report.checks);
            assert!(pairing.is_perfect().unwrap(), "{}", p.label());
        }
    }
}

#[test]
fn taft_pairings_are_perfect_dualities() {
    for n in 2..=5 {
        let pairing = DualityPairing::for_family(&Family::Taft { n, k: 1 }).unwrap();
        assert!(pairing.verify_duality_axioms(1).unwrap().passed());
        let perf = pairing.perfectness().unwrap();
        assert_eq!(perf.size, ((n * n) as usize, (n * n) as usize));
        assert!(perf.perfect);
    }
}

#[test]
fn unit_pairings_are_counits() {
    let p = HnParams::new(4, 1, 2, 1).unwrap();
    let pairing = DualityPairing::for_family(&Family::Hnzmt(p)).unwrap();
    let h = pairing.right().clone();
    for x in 0..h.dimension() as u32 {
        // ⟨1, x^i y^j⟩ = δ_{0,i}
        let i = h.exponents(x)[0];
        let expected = if i == 0 { CycloNum::one(4) } else { CycloNum::zero(4) };
        assert_eq!(pairing.pair_mono(0, x).unwrap(), expected);
    }
}

#[test]
fn t421_pairing_matches_closed_form() {
    for kz in [1, 3] {
        let pairing = DualityPairing::for_family(&Family::T421 { k: kz }).unwrap();
        let (k, h) = (pairing.left().clone(), pairing.right().clone());
        let zeta = CycloNum::root_of_unity(4, kz as i64);
        for u in 0..8 {
            let [i, j] = <[u32; 2]>::try_from(k.exponents(u)).unwrap();
            for x in 0..8 {
                let [kk, l] = <[u32; 2]>::try_from(h.exponents(x)).unwrap();
                let expected = if i == kk { zeta.pow((j * l) as i64).unwrap() } else { CycloNum::zero(4) };
                assert_eq!(pairing.pair_mono(u, x).unwrap(), expected);
            }
        }
        let report = pairing.verify_duality_axioms(5).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
        let perf = pairing.perfectness().unwrap();
        assert_eq!(perf.size, (8, 8));
        assert!(perf.perfect);
    }
}

#[test]
fn t421_antipode_rows() {
    // ⟨S(X G^b), x g^j⟩ = (-1)^j ζ^{b(-1-j)}
    let pairing = DualityPairing::for_family(&Family::T421 { k: 1 }).unwrap();
    let (k, h) = (pairing.left().clone(), pairing.right().clone());
    let zeta = CycloNum::root_of_unity(4, 1);
    for b in 0..4u32 {
        for j in 0..4u32 {
            let u = k.monomial(&[1, b]);
            let x = h.monomial(&[1, j]);
            let lhs = pairing.pair(k.antipode_mono(u), &h.parse_element(&format!("x*g^{j}"), &[]).unwrap()).unwrap();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            let expected = &CycloNum::from_int(4, sign) * &zeta.pow(-(b as i64) * (1 + j as i64)).unwrap();
            assert_eq!(lhs, expected);
            assert_eq!(lhs, pairing.pair(&k.parse_element(&format!("X*G^{b}"), &[]).unwrap(), h.antipode_mono(x)).unwrap());
        }
    }
}

#[test]
fn quantum_sl2_pairing() {
    let n = 3;
    let pairing = DualityPairing::for_family(&Family::Uq { n, k: 1 }).unwrap();
    let (o, u) = (pairing.left().clone(), pairing.right().clone());
    let q = CycloNum::root_of_unity(n, 1);
    let a = o.parse_element("a", &[]).unwrap();
    assert_eq!(pairing.pair(&a, &u.parse_element("K", &[]).unwrap()).unwrap(), q);
    assert_eq!(pairing.pair(&o.parse_element("b", &[]).unwrap(), &u.parse_element("E", &[]).unwrap()).unwrap(), CycloNum::one(n));
    let an = o.pow(&a, n);
    let dn = o.parse_element("d^3", &[]).unwrap();
    let bn = o.pow(&o.parse_element("b", &[]).unwrap(), n);
    for x in 0..u.dimension() as u32 {
        let [i, j, _] = <[u32; 3]>::try_from(u.exponents(x)).unwrap();
        let basis = u.parse_element(&u.format_mono(x), &[]).unwrap();
        let expected = if i == 0 && j == 0 { CycloNum::one(n) } else { CycloNum::zero(n) };
        assert_eq!(pairing.pair(&an, &basis).unwrap(), expected);
        assert_eq!(pairing.pair(&dn, &basis).unwrap(), expected);
        assert!(pairing.pair(&bn, &basis).unwrap().is_zero());
    }
    let report = pairing.verify_duality_axioms(11).unwrap();
    assert!(report.passed(), "{:?}", report.checks);
    let perf = pairing.perfectness().unwrap();
    assert_eq!(perf.size, (27, 27));
    assert!(perf.perfect);
}

#[test]
fn quantum_sl2_pairing_at_five() {
    let pairing = DualityPairing::for_family(&Family::Uq { n: 5, k: 1 }).unwrap();
    let report = pairing.verify_duality_axioms(2).unwrap();
    assert!(report.passed(), "{:?}", report.checks);
    assert!(pairing.is_perfect().unwrap());
}

#[test]
fn dual_basis_identities_hold() {
    let report = dual_basis_identities(3, 1).unwrap();
    assert!(report.passed(), "{report:?}");
    assert_eq!(report.expansion.checked, 27 * 27);
    assert!(dual_basis_identities(5, 2).unwrap().passed());
}

#[test]
fn corrupted_table_fails_axioms() {
    let data = Family::Taft { n: 3, k: 1 }.dual_data().unwrap();
    let mut table = data.table.clone();
    table[0].2 = CycloNum::root_of_unity(3, 2);
    let pairing = DualityPairing::new(Arc::new(data.dual), Arc::new(data.algebra), &table).unwrap();
    assert!(!pairing.verify_duality_axioms(0).unwrap().passed());
}

#[test]
fn mismatched_inputs_are_rejected() {
    let a = Family::Taft { n: 3, k: 1 }.dual_data().unwrap();
    let b = Family::Taft { n: 4, k: 1 }.dual_data().unwrap();
    let err = DualityPairing::new(Arc::new(a.dual), Arc::new(b.algebra), &[]).err().unwrap();
    assert!(matches!(err, HopfError::Invalid(_)));
    let pairing = DualityPairing::for_family(&Family::Taft { n: 3, k: 1 }).unwrap();
    let stranger = Arc::new(Family::Taft { n: 3, k: 1 }.build().unwrap());
    let x = HopfElement::generator(&stranger, "x").unwrap();
    let big_x = HopfElement::generator(pairing.left(), "X").unwrap();
    assert_eq!(pairing.pair_elements(&big_x, &x), Err(HopfError::OwnerMismatch));
    let own_x = HopfElement::generator(pairing.right(), "x").unwrap();
    assert!(pairing.pair_elements(&big_x, &own_x).unwrap().is_one());
}
