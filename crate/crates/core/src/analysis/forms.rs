//! Invariant bilinear and sesquilinear forms on IR-representations.

use num_complex::Complex64;

use crate::ir::{build, character_of, IRDatum, Representation};
use crate::linalg::{self, identity, kron, max_abs, residual, unvec, vstack, CMatrix, ONE};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormKind {
    /// `B(u, v) = u^T G v`, invariant when `g^T G g = G`.
    Bilinear,
    /// `H(u, v) = u^* G v`, invariant when `g^* G g = G`.
    Sesquilinear,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InvariantForm {
    pub kind: FormKind,
    /// `gram[(s, t)]` is the form evaluated on `(alpha_s, alpha_t)`.
    pub gram: CMatrix,
    /// Largest entry of `g^T G g - G` (or `g^* G g - G`) over generators.
    pub residual: f64,
    /// Dimension of all (not necessarily symmetric) invariant matrices.
    pub solution_dim: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FormObstruction {
    /// A character value outside `{+1, -1}` (bilinear) or the unit circle.
    CharacterValue { chord: (usize, usize), value: Complex64 },
    /// `c_st c_ts` is not real, so no Hermitian form propagates across `{s, t}`.
    NonRealBondProduct { pair: (usize, usize) },
    /// Absorbing bonds present and the invariant system only has the zero
    /// solution (among symmetric or Hermitian matrices).
    OnlyZeroSolution,
}

#[derive(Debug, Clone, PartialEq)]
pub enum FormOutcome {
    Exists(InvariantForm),
    NoneExists(FormObstruction),
}

impl FormOutcome {
    pub fn form(&self) -> Option<&InvariantForm> {
        match self {
            Self::Exists(f) => Some(f),
            Self::NoneExists(_) => None,
        }
    }
}

fn twisted(g: &CMatrix, kind: FormKind) -> CMatrix {
    match kind {
        FormKind::Bilinear => g.transpose(),
        FormKind::Sesquilinear => g.adjoint(),
    }
}

fn invariance_residual(rep: &Representation, gram: &CMatrix, kind: FormKind) -> f64 {
    rep.gens().iter().map(|g| residual(&(twisted(g, kind) * gram * g), gram)).fold(0.0, f64::max)
}

fn invariance_system(rep: &Representation, kind: FormKind) -> CMatrix {
    let n = rep.dim();
    let id = identity(n * n);
    // vec(P X g) = (g^T kron P) vec X
    let blocks: Vec<CMatrix> = rep.gens().iter().map(|g| kron(&g.transpose(), &twisted(g, kind)) - &id).collect();
    vstack(&blocks)
}

/// Dimension of `{X : g^T X g = X}` (bilinear) or `{X : g^* X g = X}`.
pub fn form_solution_dim(rep: &Representation, kind: FormKind, tol: f64) -> usize {
    let n = rep.dim();
    if rep.gens().is_empty() {
        return n * n;
    }
    linalg::corank(&invariance_system(rep, kind), tol)
}

pub fn bilinear_form(datum: &IRDatum, tol: f64) -> FormOutcome {
    form(datum, FormKind::Bilinear, tol)
}

pub fn sesquilinear_form(datum: &IRDatum, tol: f64) -> FormOutcome {
    form(datum, FormKind::Sesquilinear, tol)
}

fn form(datum: &IRDatum, kind: FormKind, tol: f64) -> FormOutcome {
    let rep = build(datum);
    if datum.bonds().has_absorbing_bond() {
        return solved_form(&rep, kind, tol);
    }

    let tilde = datum.tilde_system();
    let chi = character_of(datum).chi;
    for (&chord, &x) in tilde.basis.chords().iter().zip(chi.values()) {
        let ok = match kind {
            FormKind::Bilinear => (x - ONE).norm() <= tol || (x + ONE).norm() <= tol,
            FormKind::Sesquilinear => (x.norm() - 1.0).abs() <= tol,
        };
        if !ok {
            return FormOutcome::NoneExists(FormObstruction::CharacterValue { chord, value: x });
        }
    }

    let n = datum.system().rank();
    let mut diag = vec![ONE; n];
    for v in tilde.basis.bfs_order() {
        let Some(p) = tilde.basis.forest_parent(v) else { continue };
        let (c_pv, c_vp) = (datum.coefficient(p, v), datum.coefficient(v, p));
        diag[v] = match kind {
            FormKind::Bilinear => diag[p] * c_pv / c_vp,
            FormKind::Sesquilinear => {
                let d = c_pv.conj() * diag[p] / c_vp;
                if d.im.abs() > tol * d.norm().max(1.0) {
                    return FormOutcome::NoneExists(FormObstruction::NonRealBondProduct { pair: (p.min(v), p.max(v)) });
                }
                Complex64::new(d.re, 0.0)
            }
        };
    }
    let gram = CMatrix::from_fn(n, n, |s, t| if s == t { diag[s] } else { -datum.coefficient(s, t) * diag[s] / 2.0 });
    if kind == FormKind::Sesquilinear {
        if let Some((s, t)) =
            datum.system().pairs().find(|&(s, t)| (gram[(s, t)] - gram[(t, s)].conj()).norm() > tol * max_abs(&gram))
        {
            return FormOutcome::NoneExists(FormObstruction::NonRealBondProduct { pair: (s, t) });
        }
    }
    let residual = invariance_residual(&rep, &gram, kind);
    FormOutcome::Exists(InvariantForm { kind, gram, residual, solution_dim: form_solution_dim(&rep, kind, tol) })
}

/// Direct solve of the invariance equations, used when absorbing bonds make
/// the path construction inapplicable.
fn solved_form(rep: &Representation, kind: FormKind, tol: f64) -> FormOutcome {
    let n = rep.dim();
    let system = invariance_system(rep, kind);
    let solution_dim = linalg::corank(&system, tol);
    let basis: Vec<CMatrix> = linalg::null_space(&system, tol).iter().map(|v| unvec(v, n, n)).collect();
    let candidate = basis.iter().find_map(|x| {
        let (sym, anti) = match kind {
            FormKind::Bilinear => (x + x.transpose(), CMatrix::zeros(n, n)),
            FormKind::Sesquilinear => (x + x.adjoint(), (x - x.adjoint()) * Complex64::i()),
        };
        [sym, anti].into_iter().find(|m| max_abs(m) > tol)
    });
    match candidate {
        None => FormOutcome::NoneExists(FormObstruction::OnlyZeroSolution),
        Some(g) => {
            let gram = &g / Complex64::new(max_abs(&g), 0.0);
            let residual = invariance_residual(rep, &gram, kind);
            FormOutcome::Exists(InvariantForm { kind, gram, residual, solution_dim })
        }
    }
}
