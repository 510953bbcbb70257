//! The one-parameter family `V_x` of IR-representations of type `A~_n`.

use num_complex::Complex64;

use crate::coxeter::{BondOrder, CoxeterSystem};
use crate::error::{Error, Result};
use crate::ir::IRDatum;
use crate::linalg::ZERO;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineAnSpec {
    n: usize,
    x: Complex64,
}

impl AffineAnSpec {
    pub fn new(n: usize, x: Complex64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidDatum(format!("A~_n needs n >= 2, got {n}")));
        }
        if x == ZERO || !x.is_finite() {
            return Err(Error::InvalidDatum("x must be nonzero and finite".into()));
        }
        Ok(Self { n, x })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> Complex64 {
        self.x
    }
}

/// Generators `s0, ..., sn` on a cycle.
pub fn affine_system(n: usize) -> Result<CoxeterSystem> {
    let labels = (0..=n).map(|i| format!("s{i}")).collect();
    CoxeterSystem::from_fn(labels, |i, j| {
        if j == i + 1 || (i == 0 && j == n) {
            BondOrder::Finite(3)
        } else {
            BondOrder::Finite(2)
        }
    })
}

/// `a_0^n = x`, every other scalar 1, all `k = 1`.
pub fn affine_datum(spec: &AffineAnSpec) -> IRDatum {
    let system = affine_system(spec.n).expect("cycle systems are valid");
    IRDatum::geometric(system).with_scalar(0, spec.n, spec.x).expect("x is nonzero")
}

/// `(2 - x - 1/x) / 2^{n+1}`.
pub fn det_formula(spec: &AffineAnSpec) -> Complex64 {
    (2.0 - spec.x - spec.x.inv()) / 2f64.powi(spec.n as i32 + 1)
}
