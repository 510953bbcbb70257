mod common;

use coxrep::coxeter::{enumerate_dihedral, BondOrder, CoxeterSystem, SystemDescription};
use coxrep::dihedral::{matrices, DihedralRepSpec};
use coxrep::error::SystemViolation;
use coxrep::linalg::{identity, residual, CMatrix};
use proptest::prelude::*;

fn word_matrix(letters: &[usize], r: &CMatrix, t: &CMatrix) -> CMatrix {
    letters.iter().fold(identity(2), |acc, &l| acc * if l == 0 { r } else { t })
}

#[test]
fn dihedral_words_are_distinct_in_rho_1() {
    for m in 2..=12u32 {
        let (r, t) = matrices(&DihedralRepSpec::RhoK { m, k: 1 }).unwrap().as_matrices();
        let words = enumerate_dihedral(BondOrder::Finite(m), (0, 1)).unwrap();
        assert_eq!(words.len(), 2 * m as usize);
        let mats: Vec<CMatrix> = words.iter().map(|w| word_matrix(&w.letters(), &r, &t)).collect();
        for i in 0..mats.len() {
            for j in 0..i {
                assert!(residual(&mats[i], &mats[j]) > 1e-6, "m={m}: words {i} and {j} coincide");
            }
        }
        // the longest element has both reduced expressions
        let long_t: Vec<usize> = (0..m as usize).map(|i| if i % 2 == 0 { 1 } else { 0 }).collect();
        assert!(residual(&word_matrix(&long_t, &r, &t), mats.last().unwrap()) < 1e-12);
    }
}

#[test]
fn enumeration_rejects_small_and_infinite() {
    assert!(enumerate_dihedral(BondOrder::Finite(1), (0, 1)).is_err());
    assert!(enumerate_dihedral(BondOrder::Infinite, (0, 1)).is_err());
}

#[test]
fn conflicting_and_unknown_bonds() {
    let d = SystemDescription {
        generators: vec!["a".into(), "b".into()],
        bonds: vec![
            ("a".into(), "b".into(), BondOrder::Finite(3)),
            ("b".into(), "a".into(), BondOrder::Finite(4)),
            ("a".into(), "z".into(), BondOrder::Finite(3)),
            ("a".into(), "a".into(), BondOrder::Finite(3)),
        ],
        default_bond: None,
    };
    let errs = d.validate().unwrap_err();
    assert!(errs.contains(&SystemViolation::ConflictingBond("b".into(), "a".into())));
    assert!(errs.contains(&SystemViolation::UnknownLabel("z".into())));
    assert!(errs.contains(&SystemViolation::SelfBond("a".into())));
}

#[test]
fn empty_label_rejected() {
    assert!(CoxeterSystem::new(vec!["".into()], vec![]).is_err());
}

proptest! {
    #[test]
    fn valid_tables_build_symmetric_systems(n in 1usize..7, seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let sys = common::random_finite_system(&mut rng, n, 9);
        for i in 0..n {
            prop_assert_eq!(sys.bond(i, i), BondOrder::Finite(1));
            for j in 0..n {
                prop_assert_eq!(sys.bond(i, j), sys.bond(j, i));
            }
        }
        prop_assert_eq!(sys.pairs().count(), n * (n - 1) / 2);
    }

    #[test]
    fn every_small_order_is_reported(order in 0u32..2) {
        let d = SystemDescription {
            generators: vec!["a".into(), "b".into()],
            bonds: vec![("a".into(), "b".into(), BondOrder::Finite(order))],
            default_bond: None,
        };
        let errs = d.validate().unwrap_err();
        let is_too_small = matches!(errs[0], SystemViolation::BondTooSmall { .. });
        prop_assert!(is_too_small);
    }
}
