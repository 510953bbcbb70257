//! Small dense complex linear algebra.
//!
//! Everything here works on `DMatrix<Complex64>` and is meant for the
//! handful-of-generators sizes this crate deals with. Rank decisions use a
//! complete-pivoting Gauss–Jordan sweep that stops once the remaining pivot
//! falls below `tol` times the largest entry of the input.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Default absolute/relative threshold for rank and equality decisions.
pub const DEFAULT_TOL: f64 = 1e-9;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn real(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_vec(v: &CVector) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Entrywise max-norm of `a - b`.
pub fn residual(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape(), "residual of mismatched shapes");
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// `|a - b| <= tol * max(1, |a|, |b|)`.
pub fn approx_eq(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(a.norm()).max(b.norm())
}

pub fn is_zero(z: Complex64, tol: f64) -> bool {
    z.norm() <= tol
}

/// Result of a complete-pivoting Gauss–Jordan reduction. Pivots below
/// `tol * max(1, max_abs)` count as zero.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// Reduced matrix with columns permuted by `col_perm`; the leading
    /// `rank x rank` block is the identity.
    reduced: CMatrix,
    col_perm: Vec<usize>,
    rank: usize,
}

impl Reduction {
    pub fn new(m: &CMatrix, tol: f64) -> Self {
        let (rows, cols) = m.shape();
        let mut a = m.clone();
        let mut col_perm: Vec<usize> = (0..cols).collect();
        let threshold = tol * max_abs(m).max(1.0);
        let mut rank = 0;

        for step in 0..rows.min(cols) {
            let (mut pi, mut pj, mut best) = (step, step, -1.0);
            for j in step..cols {
                for i in step..rows {
                    let v = a[(i, j)].norm();
                    if v > best {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            }
            if best <= threshold {
                break;
            }
            a.swap_rows(step, pi);
            a.swap_columns(step, pj);
            col_perm.swap(step, pj);

            let p = a[(step, step)];
            for j in 0..cols {
                a[(step, j)] /= p;
            }
            for i in 0..rows {
                if i == step {
                    continue;
                }
                let f = a[(i, step)];
                if f == ZERO {
                    continue;
                }
                for j in 0..cols {
                    let s = a[(step, j)];
                    a[(i, j)] -= f * s;
                }
            }
            rank += 1;
        }
        Self { reduced: a, col_perm, rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Basis of the right null space (not orthonormalized).
    pub fn null_space(&self) -> Vec<CVector> {
        let cols = self.reduced.ncols();
        let r = self.rank;
        (r..cols)
            .map(|free| {
                let mut y = CVector::zeros(cols);
                y[free] = ONE;
                for i in 0..r {
                    y[i] = -self.reduced[(i, free)];
                }
                let mut x = CVector::zeros(cols);
                for (k, &orig) in self.col_perm.iter().enumerate() {
                    x[orig] = y[k];
                }
                x
            })
            .collect()
    }
}

pub fn rank(m: &CMatrix, tol: f64) -> usize {
    Reduction::new(m, tol).rank()
}

pub fn corank(m: &CMatrix, tol: f64) -> usize {
    m.ncols() - rank(m, tol)
}

/// Orthonormal basis of `{x : m x = 0}`.
pub fn null_space(m: &CMatrix, tol: f64) -> Vec<CVector> {
    orthonormalize(&Reduction::new(m, tol).null_space(), tol)
}

/// Determinant by complete-pivoting elimination (no threshold).
pub fn det(m: &CMatrix) -> Complex64 {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.nrows();
    let mut a = m.clone();
    let mut acc = ONE;
    for step in 0..n {
        let (mut pi, mut pj, mut best) = (step, step, -1.0);
        for j in step..n {
            for i in step..n {
                let v = a[(i, j)].norm();
                if v > best {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        }
        if best == 0.0 {
            return ZERO;
        }
        if pi != step {
            a.swap_rows(step, pi);
            acc = -acc;
        }
        if pj != step {
            a.swap_columns(step, pj);
            acc = -acc;
        }
        let p = a[(step, step)];
        acc *= p;
        for i in step + 1..n {
            let f = a[(i, step)] / p;
            for j in step..n {
                let s = a[(step, j)];
                a[(i, j)] -= f * s;
            }
        }
    }
    acc
}

/// Modified Gram–Schmidt; vectors whose residual norm drops below `tol`
/// (relative to their original norm) are discarded.
pub fn orthonormalize(vs: &[CVector], tol: f64) -> Vec<CVector> {
    let mut out: Vec<CVector> = Vec::with_capacity(vs.len());
    for v in vs {
        let n0 = v.norm();
        if n0 == 0.0 {
            continue;
        }
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &out {
                let proj = q.dotc(&w);
                w -= q * proj;
            }
        }
        let n = w.norm();
        if n > tol * n0.max(1.0) {
            out.push(w / real(n));
        }
    }
    out
}

/// Orthonormal basis of the orthogonal complement of `span(vs)` in `C^dim`.
pub fn complement(vs: &[CVector], dim: usize, tol: f64) -> Vec<CVector> {
    let base = orthonormalize(vs, tol);
    let mut all = base.clone();
    for i in 0..dim {
        all.push(CVector::from_fn(dim, |k, _| if k == i { ONE } else { ZERO }));
    }
    orthonormalize(&all, tol).split_off(base.len())
}

pub fn columns_to_matrix(vs: &[CVector], rows: usize) -> CMatrix {
    let mut m = CMatrix::zeros(rows, vs.len());
    for (j, v) in vs.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

/// Stack matrices with equal column counts on top of each other.
pub fn vstack(blocks: &[CMatrix]) -> CMatrix {
    let cols = blocks.first().map_or(0, |b| b.ncols());
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = CMatrix::zeros(rows, cols);
    let mut r0 = 0;
    for b in blocks {
        assert_eq!(b.ncols(), cols, "vstack of mismatched widths");
        out.view_mut((r0, 0), b.shape()).copy_from(b);
        r0 += b.nrows();
    }
    out
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let mut out = CMatrix::zeros(ar * br, ac * bc);
    for i in 0..ar {
        for j in 0..ac {
            let s = a[(i, j)];
            if s == ZERO {
                continue;
            }
            out.view_mut((i * br, j * bc), (br, bc)).copy_from(&(b * s));
        }
    }
    out
}

/// Column-major reshape of a length `rows*cols` vector.
pub fn unvec(v: &CVector, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_column_slice(rows, cols, v.as_slice())
}

/// Basis of `{X : X * from[s] = to[s] * X for all s}` (X is `dim_to x dim_from`).
pub fn hom_space(from: &[CMatrix], to: &[CMatrix], tol: f64) -> Vec<CMatrix> {
    assert_eq!(from.len(), to.len(), "hom_space needs matching generator lists");
    let df = from.first().map_or(0, |m| m.nrows());
    let dt = to.first().map_or(0, |m| m.nrows());
    if df == 0 || dt == 0 {
        return Vec::new();
    }
    // vec(X A) = (A^T kron I) vec X,  vec(B X) = (I kron B) vec X
    let blocks: Vec<CMatrix> =
        from.iter().zip(to).map(|(a, b)| kron(&a.transpose(), &identity(dt)) - kron(&identity(df), b)).collect();
    let system = vstack(&blocks);
    null_space(&system, tol).iter().map(|v| unvec(v, dt, df)).collect()
}

/// Smallest subspace containing `seed` and stable under every matrix in `gens`.
pub fn generated_subspace(gens: &[CMatrix], seed: &[CVector], tol: f64) -> Vec<CVector> {
    let mut basis = orthonormalize(seed, tol);
    let dim = seed.first().map_or(0, |v| v.len());
    loop {
        let before = basis.len();
        let mut cand = basis.clone();
        for g in gens {
            for b in &basis {
                cand.push(g * b);
            }
        }
        basis = orthonormalize(&cand, tol);
        if basis.len() == before || basis.len() == dim {
            return basis;
        }
    }
}
