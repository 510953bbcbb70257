//! Reducibility and related structure of IR-representations.

mod direction;
mod dual;
mod forms;

pub use direction::{direction_preorder, ClassSpan, DirectionPreorder};
pub use dual::{dual, DualOutcome, DualReport};
pub use forms::{
    bilinear_form, form_solution_dim, sesquilinear_form, FormKind, FormObstruction, FormOutcome, InvariantForm,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ir::{IRDatum, Representation};
use crate::linalg::{self, columns_to_matrix, identity, max_abs_vec, residual, CMatrix, CVector, ONE};

/// `A = I - C/2` where `C_ij` is the coefficient of `alpha_i` in `i . alpha_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixA {
    pub entries: CMatrix,
}

impl MatrixA {
    pub fn det(&self) -> Complex64 {
        linalg::det(&self.entries)
    }

    pub fn rank(&self, tol: f64) -> usize {
        linalg::rank(&self.entries, tol)
    }

    pub fn corank(&self, tol: f64) -> usize {
        linalg::corank(&self.entries, tol)
    }
}

pub fn matrix_a(datum: &IRDatum) -> MatrixA {
    let n = datum.system().rank();
    let entries = CMatrix::from_fn(n, n, |i, j| if i == j { ONE } else { -datum.coefficient(i, j) / 2.0 });
    MatrixA { entries }
}

pub fn det_a(datum: &IRDatum) -> Complex64 {
    matrix_a(datum).det()
}

pub fn corank_a(datum: &IRDatum, tol: f64) -> usize {
    matrix_a(datum).corank(tol)
}

/// Orthonormal basis of the vectors fixed by every generator.
pub fn fixed_subspace(rep: &Representation, tol: f64) -> Vec<CVector> {
    let n = rep.dim();
    if rep.gens().is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    let id = identity(n);
    let stacked = linalg::vstack(&rep.gens().iter().map(|g| g - &id).collect::<Vec<_>>());
    linalg::null_space(&stacked, tol)
}

fn unit(n: usize, i: usize) -> CVector {
    CVector::from_fn(n, |k, _| if k == i { ONE } else { linalg::ZERO })
}

/// `dim { X : X g_s = g_s X for all s }`.
pub fn commutant_dim(rep: &Representation, tol: f64) -> usize {
    linalg::hom_space(rep.gens(), rep.gens(), tol).len()
}

/// `dim Hom_W(from, to)`.
pub fn hom_dim(from: &Representation, to: &Representation, tol: f64) -> usize {
    linalg::hom_space(from.gens(), to.gens(), tol).len()
}

/// A quotient `V / K` by a pointwise-fixed subspace, realized on the
/// orthogonal complement of `K`.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub rep: Representation,
    /// Orthonormal basis of `K^perp` as columns (`dim V x dim V/K`).
    pub complement: CMatrix,
    /// Orthonormal basis of `K`.
    pub kernel: Vec<CVector>,
}

impl Quotient {
    /// Coordinates in the quotient of the class of `v`.
    pub fn project(&self, v: &CVector) -> CVector {
        self.complement.adjoint() * v
    }
}

pub fn quotient(rep: &Representation, kernel: &[CVector], tol: f64) -> Result<Quotient> {
    let n = rep.dim();
    if kernel.iter().any(|v| v.len() != n) {
        return Err(Error::Dimension(format!("kernel vectors must have length {n}")));
    }
    for (g, label) in rep.gens().iter().zip(rep.labels()) {
        for v in kernel {
            if max_abs_vec(&(g * v - v)) > tol * v.norm().max(1.0) {
                return Err(Error::KernelNotFixed(label.clone()));
            }
        }
    }
    let kernel = linalg::orthonormalize(kernel, tol);
    let comp = linalg::complement(&kernel, n, tol);
    let q = columns_to_matrix(&comp, n);
    let qh = q.adjoint();
    let gens = rep.gens().iter().map(|g| &qh * g * &q).collect();
    let alpha = rep.alpha().iter().map(|a| &qh * a).collect();
    let rep = Representation::new(rep.labels().to_vec(), gens, alpha)?;
    Ok(Quotient { rep, complement: q, kernel })
}

/// The map `V_1/K_1 -> V_2/K_2` induced by `d : V_1 -> V_2`, which must
/// send `K_1` into `K_2`.
pub fn induced_map(from: &Quotient, to: &Quotient, d: &CMatrix, tol: f64) -> Result<CMatrix> {
    if d.shape() != (to.complement.nrows(), from.complement.nrows()) {
        return Err(Error::Dimension("map does not match the quotient ambient spaces".into()));
    }
    let back = columns_to_matrix(&to.kernel, to.complement.nrows());
    for v in &from.kernel {
        let image = d * v;
        let inside = &back * (back.adjoint() * &image);
        if max_abs_vec(&(image - inside)) > tol * v.norm().max(1.0) {
            return Err(Error::Dimension("map does not send the first kernel into the second".into()));
        }
    }
    Ok(to.complement.adjoint() * d * &from.complement)
}

/// Largest entry of `phi g1_s - g2_s phi` over generators.
pub fn intertwining_residual(phi: &CMatrix, from: &Representation, to: &Representation) -> f64 {
    from.gens().iter().zip(to.gens()).map(|(g1, g2)| residual(&(phi * g1), &(g2 * phi))).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{BondOrder, CoxeterSystem};
    use crate::ir::build;
    use crate::linalg::{real, DEFAULT_TOL};

    #[test]
    fn a2_matrix_a() {
        let d = IRDatum::geometric(CoxeterSystem::dihedral(BondOrder::Finite(3)).unwrap());
        let a = matrix_a(&d);
        let expected = CMatrix::from_row_slice(2, 2, &[ONE, real(-0.5), real(-0.5), ONE]);
        assert!(residual(&a.entries, &expected) < 1e-15);
        assert!((a.det() - real(0.75)).norm() < 1e-15);
        assert_eq!(a.corank(DEFAULT_TOL), 0);
        assert!(fixed_subspace(&build(&d), DEFAULT_TOL).is_empty());
    }

    #[test]
    fn commuting_bonds_give_identity() {
        let sys =
            CoxeterSystem::from_fn(vec!["a".into(), "b".into(), "c".into()], |_, _| BondOrder::Finite(2)).unwrap();
        let d = IRDatum::geometric(sys);
        assert_eq!(matrix_a(&d).entries, identity(3));
        assert_eq!(commutant_dim(&build(&d), DEFAULT_TOL), 3);
    }

    #[test]
    fn trivial_quotient_is_same() {
        let d = IRDatum::geometric(CoxeterSystem::dihedral(BondOrder::Finite(3)).unwrap());
        let rep = build(&d);
        let q = quotient(&rep, &[], DEFAULT_TOL).unwrap();
        assert_eq!(q.rep.dim(), 2);
        assert_eq!(hom_dim(&rep, &q.rep, DEFAULT_TOL), 1);
    }

    #[test]
    fn unfixed_kernel_rejected() {
        let d = IRDatum::geometric(CoxeterSystem::dihedral(BondOrder::Finite(3)).unwrap());
        let v = CVector::from_vec(vec![ONE, ONE]);
        assert!(matches!(quotient(&build(&d), &[v], DEFAULT_TOL), Err(Error::KernelNotFixed(_))));
    }
}
