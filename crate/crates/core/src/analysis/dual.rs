//! Contragredient representations of finite-bond IR-representations.

use crate::error::{Error, Result};
use crate::ir::{build, character_of, Classification, IRDatum};
use crate::linalg::{self, columns_to_matrix, max_abs_vec, residual, CMatrix, CVector, ONE};

use super::matrix_a;

#[derive(Debug, Clone)]
pub enum DualOutcome {
    /// `A` invertible: the `gamma_s` form a basis and `V^*` is the
    /// IR-representation with scalars `b_r^t = a_t^r`.
    Invertible {
        dual_datum: IRDatum,
        dual_classification: Classification,
        /// Largest entry of `T^{-1} g_s^T T` minus the generators built from `dual_datum`.
        basis_residual: f64,
        /// Largest `|chi*(c) - chi(c)^{-1}|` over chords.
        chi_error: f64,
    },
    /// `A` singular: `V_1 = span{gamma_s}` is a sub-representation of
    /// dimension `rank(A)` and `W` acts trivially on `V^* / V_1`.
    Singular {
        rank: usize,
        sub_dim: usize,
        trivial_quotient_dim: usize,
        /// Distance of `g_s^T gamma_t` from `V_1`, and of `g_s^T f - f` from `V_1`.
        stability_residual: f64,
    },
}

#[derive(Debug, Clone)]
pub struct DualReport {
    /// `gamma_s` in the dual basis `{alpha_s^*}`.
    pub gamma: Vec<CVector>,
    /// Columns are the `gamma_s`; equal to `A^T` entry for entry.
    pub transition: CMatrix,
    /// Generators on `V^*` in the dual basis (`g_s^T`).
    pub dual_gens: Vec<CMatrix>,
    /// Largest `|g_s^T gamma_s + gamma_s|`.
    pub eigen_residual: f64,
    pub outcome: DualOutcome,
}

pub fn dual(datum: &IRDatum, tol: f64) -> Result<DualReport> {
    if !datum.is_finite_type() {
        return Err(Error::Unsupported("dual representations require every bond to be finite".into()));
    }
    let n = datum.system().rank();
    let rep = build(datum);
    let a = matrix_a(datum);

    let gamma: Vec<CVector> =
        (0..n).map(|s| CVector::from_fn(n, |t, _| if s == t { ONE } else { -datum.coefficient(s, t) / 2.0 })).collect();
    let transition = columns_to_matrix(&gamma, n);
    debug_assert_eq!(transition, a.entries.transpose());
    let dual_gens: Vec<CMatrix> = rep.gens().iter().map(|g| g.transpose()).collect();
    let eigen_residual = dual_gens.iter().zip(&gamma).map(|(g, v)| max_abs_vec(&(g * v + v))).fold(0.0, f64::max);

    let rank = a.rank(tol);
    let outcome = if rank == n {
        let dual_datum = datum.transposed_scalars();
        let dual_rep = build(&dual_datum);
        let lu = transition.clone().lu();
        let basis_residual = dual_gens
            .iter()
            .zip(dual_rep.gens())
            .map(|(g, h)| {
                let conj = lu.solve(&(g * &transition)).expect("invertible transition matrix");
                residual(&conj, h)
            })
            .fold(0.0, f64::max);
        let dual_classification = character_of(&dual_datum);
        let chi = character_of(datum).chi;
        let chi_error = dual_classification
            .chi
            .values()
            .iter()
            .zip(chi.values())
            .map(|(y, x)| (y - x.inv()).norm())
            .fold(0.0, f64::max);
        DualOutcome::Invertible { dual_datum, dual_classification, basis_residual, chi_error }
    } else {
        let basis = linalg::orthonormalize(&gamma, tol);
        let q = columns_to_matrix(&basis, n);
        let distance = |v: &CVector| max_abs_vec(&(v - &q * (q.adjoint() * v)));
        let mut stability_residual: f64 = 0.0;
        for g in &dual_gens {
            for v in &gamma {
                stability_residual = stability_residual.max(distance(&(g * v)));
            }
            for j in 0..n {
                let moved =
                    g.column(j).into_owned() - CVector::from_fn(n, |i, _| if i == j { ONE } else { linalg::ZERO });
                stability_residual = stability_residual.max(distance(&moved));
            }
        }
        DualOutcome::Singular { rank, sub_dim: basis.len(), trivial_quotient_dim: n - basis.len(), stability_residual }
    };
    Ok(DualReport { gamma, transition, dual_gens, eigen_residual, outcome })
}
