//! Seeded random data shared by the integration tests.

#![allow(dead_code)]

use coxrep::dihedral::DihedralRepSpec;
use coxrep::linalg::{CMatrix, ONE};
use coxrep::{BondOrder, CoxeterSystem, IRDatum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("s{i}")).collect()
}

pub fn unit(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// Modulus in `[1/2, 2]`, random phase.
pub fn nonzero(rng: &mut impl Rng) -> Complex64 {
    Complex64::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..std::f64::consts::TAU))
}

pub fn random_finite_system(rng: &mut impl Rng, rank: usize, max_m: u32) -> CoxeterSystem {
    CoxeterSystem::from_fn(labels(rank), |_, _| BondOrder::Finite(rng.random_range(2..=max_m))).unwrap()
}

/// Random `k` per finite bond, random `z` (sometimes on the finite-order
/// locus, sometimes zero) per infinite bond, scalars from `scalar`.
pub fn random_datum<R: Rng>(
    rng: &mut R,
    system: CoxeterSystem,
    mut scalar: impl FnMut(&mut R) -> Complex64,
) -> IRDatum {
    let n = system.rank();
    let mut d = IRDatum::geometric(system.clone());
    for (i, j) in system.pairs() {
        let spec = match system.bond(i, j) {
            BondOrder::Finite(m) => DihedralRepSpec::RhoK { m, k: rng.random_range(1..=m / 2) },
            BondOrder::Infinite => match rng.random_range(0..4) {
                0 => DihedralRepSpec::VarrhoZ { z: Complex64::new(0.0, 0.0) },
                1 => DihedralRepSpec::VarrhoZ { z: ONE },
                _ => DihedralRepSpec::VarrhoZ {
                    z: Complex64::new(rng.random_range(0.5..6.0), rng.random_range(-1.0..1.0)),
                },
            },
        };
        d = d.with_bond(i, j, spec).unwrap();
    }
    for r in 0..n {
        for t in (0..n).filter(|&t| t != r) {
            let a = scalar(rng);
            d = d.with_scalar(r, t, a).unwrap();
        }
    }
    d
}

/// A random finite-bond datum of rank `2..=6`, `m <= 8`, unit-modulus scalars.
pub fn random_suite_datum(rng: &mut impl Rng) -> IRDatum {
    let rank = rng.random_range(2..=6);
    let sys = random_finite_system(rng, rank, 8);
    random_datum(rng, sys, |r| unit(r))
}

/// Rank `3..=6` with a Hamiltonian cycle of bonds whose reduced order is at
/// least 3, so the reduced graph is connected with at least one circuit.
pub fn random_cyclic_datum(rng: &mut impl Rng) -> IRDatum {
    let n = rng.random_range(3..=6);
    let cycle_m: Vec<u32> = (0..n).map(|_| rng.random_range(3..=8)).collect();
    let on_cycle = |i: usize, j: usize| -> Option<usize> {
        if j == i + 1 {
            Some(i)
        } else if i == 0 && j == n - 1 {
            Some(n - 1)
        } else {
            None
        }
    };
    let mut others = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if on_cycle(i, j).is_none() {
                others.push(rng.random_range(2..=8));
            }
        }
    }
    let mut it = others.into_iter();
    let sys = CoxeterSystem::from_fn(labels(n), |i, j| match on_cycle(i, j) {
        Some(e) => BondOrder::Finite(cycle_m[e]),
        None => BondOrder::Finite(it.next().unwrap()),
    })
    .unwrap();
    let mut d = random_datum(rng, sys.clone(), |r| nonzero(r));
    for (i, j) in sys.pairs() {
        if let Some(e) = on_cycle(i, j) {
            let m = cycle_m[e];
            // k < m/2 keeps m / gcd(m, k) >= 3
            let k = rng.random_range(1..=(m - 1) / 2);
            d = d.with_bond(i, j, DihedralRepSpec::RhoK { m, k }).unwrap();
        }
    }
    d
}

/// `b_r^t = a_r^t lambda_t / lambda_r`: same character, different scalars.
pub fn gauge(rng: &mut impl Rng, d: &IRDatum) -> IRDatum {
    let n = d.system().rank();
    let lambda: Vec<Complex64> = (0..n).map(|_| nonzero(rng)).collect();
    let mut out = d.clone();
    for r in 0..n {
        for t in (0..n).filter(|&t| t != r) {
            out = out.with_scalar(r, t, d.scalar(r, t) * lambda[t] / lambda[r]).unwrap();
        }
    }
    out
}

pub fn entry_max(m: &CMatrix) -> f64 {
    coxrep::linalg::max_abs(m)
}
