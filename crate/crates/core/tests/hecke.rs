mod common;

use coxrep::dihedral::{matrices, DihedralRepSpec};
use coxrep::hecke::{apply, cell_element, check_a1, pair_cross_check, A1Verdict};
use coxrep::ir::{build, IRDatum, Representation};
use coxrep::linalg::{identity, max_abs, real, CMatrix, CVector, DEFAULT_TOL};
use coxrep::{BondOrder, CoxeterSystem};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;

/// Alternating product of `len` letters starting with `first`.
fn alternating(first: &CMatrix, second: &CMatrix, len: usize) -> CMatrix {
    (0..len).fold(identity(first.nrows()), |acc, i| acc * if i % 2 == 0 { first } else { second })
}

/// Signed sum over the dihedral group written out by length, without the
/// word enumeration used by the library.
fn oracle_cell(r: &CMatrix, t: &CMatrix, m: usize) -> CMatrix {
    let sign = |len: usize| real(if (m - len).is_multiple_of(2) { 1.0 } else { -1.0 });
    let mut total = alternating(r, t, m) + identity(r.nrows()) * sign(0);
    for len in 1..m {
        total += (alternating(r, t, len) + alternating(t, r, len)) * sign(len);
    }
    total
}

fn block_diag(blocks: &[(CMatrix, CMatrix)]) -> (CMatrix, CMatrix) {
    let n: usize = blocks.iter().map(|(r, _)| r.nrows()).sum();
    let (mut r, mut t) = (CMatrix::zeros(n, n), CMatrix::zeros(n, n));
    let mut at = 0;
    for (br, bt) in blocks {
        let k = br.nrows();
        r.view_mut((at, at), (k, k)).copy_from(br);
        t.view_mut((at, at), (k, k)).copy_from(bt);
        at += k;
    }
    (r, t)
}

fn pair_rep(m: u32, r: CMatrix, t: CMatrix) -> (Representation, CoxeterSystem) {
    let sys = CoxeterSystem::dihedral(BondOrder::Finite(m)).unwrap();
    let n = r.nrows();
    let rep = Representation::new(sys.labels().to_vec(), vec![r, t], vec![CVector::zeros(n); 2]).unwrap();
    (rep, sys)
}

#[test]
fn element_matches_oracle_on_catalog() {
    for m in 2..=12u32 {
        let elem = cell_element(BondOrder::Finite(m), (0, 1)).unwrap();
        assert_eq!(elem.terms.len(), 2 * m as usize);
        for k in 1..=m / 2 {
            let (r, t) = matrices(&DihedralRepSpec::RhoK { m, k }).unwrap().as_matrices();
            let got = apply(&elem, &r, &t, DEFAULT_TOL).unwrap();
            assert!(max_abs(&(&got - oracle_cell(&r, &t, m as usize))) < 1e-12);
            // every rho_k, including k = m/2, has no joint (-1)-vector
            assert!(max_abs(&got) < 1e-10, "m={m} k={k}");
        }
    }
}

#[test]
fn one_dimensional_values() {
    for m in 2..=12u32 {
        let elem = cell_element(BondOrder::Finite(m), (0, 1)).unwrap();
        let one = |v: f64| CMatrix::from_element(1, 1, real(v));
        let sign = apply(&elem, &one(-1.0), &one(-1.0), DEFAULT_TOL).unwrap()[(0, 0)];
        let expected = 2.0 * m as f64 * if m % 2 == 0 { 1.0 } else { -1.0 };
        assert_eq!(sign, real(expected));
        assert_eq!(apply(&elem, &one(1.0), &one(1.0), DEFAULT_TOL).unwrap()[(0, 0)], real(0.0));
        if m % 2 == 0 {
            for spec in [DihedralRepSpec::EpsR, DihedralRepSpec::EpsT] {
                let (r, t) = matrices(&spec).unwrap().as_matrices();
                assert_eq!(max_abs(&apply(&elem, &r, &t, DEFAULT_TOL).unwrap()), 0.0);
            }
        }
    }
}

#[test]
fn half_bond_block_passes_a1() {
    let (r, t) = matrices(&DihedralRepSpec::RhoK { m: 6, k: 3 }).unwrap().as_matrices();
    let (rep, sys) = pair_rep(6, r, t);
    assert_eq!(check_a1(&rep, &sys, DEFAULT_TOL), A1Verdict::Pass);
    assert_eq!(pair_cross_check(&rep, &sys, 0, 1, DEFAULT_TOL).unwrap(), (true, true));
}

#[test]
fn ir_representations_satisfy_a1() {
    let mut rng = common::rng(31);
    for _ in 0..30 {
        let d = common::random_suite_datum(&mut rng);
        let rep = build(&d);
        assert_eq!(check_a1(&rep, d.system(), DEFAULT_TOL), A1Verdict::Pass);
        for (r, t) in d.system().pairs() {
            assert_eq!(pair_cross_check(&rep, d.system(), r, t, DEFAULT_TOL).unwrap(), (true, true));
        }
    }
}

#[test]
fn rendering() {
    let labels = vec!["a".to_string(), "b".to_string()];
    let e = cell_element(BondOrder::Finite(4), (0, 1)).unwrap();
    assert_eq!(e.render(&labels), "abab - aba - bab + ab + ba - a - b + e");
    let d = IRDatum::geometric(CoxeterSystem::dihedral(BondOrder::Infinite).unwrap());
    assert!(cell_element(d.system().bond(0, 1), (0, 1)).is_err());
}

fn catalog_block(m: u32, choice: u32) -> (CMatrix, CMatrix) {
    let specs = if m.is_multiple_of(2) { 4 } else { 2 };
    let spec = match choice % (specs + m / 2) {
        0 => DihedralRepSpec::Trivial,
        1 => DihedralRepSpec::Sign,
        2 if m.is_multiple_of(2) => DihedralRepSpec::EpsR,
        3 if m.is_multiple_of(2) => DihedralRepSpec::EpsT,
        c => DihedralRepSpec::RhoK { m, k: c - specs + 1 },
    };
    matrices(&spec).unwrap().as_matrices()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vanishing_iff_no_joint_minus_one(m in 2u32..13, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let mut blocks = Vec::new();
        let mut dim = 0;
        let target = rng.random_range(1..=6usize);
        while dim < target {
            let b = catalog_block(m, rng.random_range(0..64));
            if dim + b.0.nrows() > 6 {
                break;
            }
            dim += b.0.nrows();
            blocks.push(b);
        }
        if blocks.is_empty() {
            return Ok(());
        }
        let (r, t) = block_diag(&blocks);
        // a well-conditioned change of basis
        let n = r.nrows();
        let p = identity(n) + CMatrix::from_fn(n, n, |_, _| Complex64::new(rng.random_range(-0.3..0.3), rng.random_range(-0.3..0.3)));
        let Some(pinv) = p.clone().try_inverse() else { return Ok(()) };
        let (r, t) = (&p * r * &pinv, &p * t * &pinv);
        let has_sign = blocks.iter().any(|(br, bt)| br.nrows() == 1 && br[(0, 0)].re < 0.0 && bt[(0, 0)].re < 0.0);
        let (rep, sys) = pair_rep(m, r.clone(), t.clone());
        let (vanishes, a1) = pair_cross_check(&rep, &sys, 0, 1, 1e-9).unwrap();
        prop_assert_eq!(vanishes, a1);
        prop_assert_eq!(a1, !has_sign);
        let value = apply(&cell_element(BondOrder::Finite(m), (0, 1)).unwrap(), &r, &t, 1e-9).unwrap();
        prop_assert!(max_abs(&(&value - oracle_cell(&r, &t, m as usize))) < 1e-9 * max_abs(&value).max(1.0));
    }
}
