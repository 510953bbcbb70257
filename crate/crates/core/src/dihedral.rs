//! One- and two-dimensional representations of finite and infinite
//! dihedral groups `<r, t>`, in the basis `(beta_r, beta_t)`.
//!
//! Matrices act on column vectors: column `j` holds the image of the `j`-th
//! basis vector, so `r . beta_t = beta_t + c beta_r` puts `c` at `(0, 1)`.

use num_complex::Complex64;

use crate::coxeter::BondOrder;
use crate::error::{Error, Result};
use crate::linalg::{real, CMatrix, DEFAULT_TOL, ONE, ZERO};

/// Which generator spans the one-dimensional sub-representation of a
/// reducible indecomposable `D_inf` module (`R` for `varrho_r^t = varrho_{1,0}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Absorbing {
    R,
    T,
}

impl Absorbing {
    pub fn swapped(self) -> Self {
        match self {
            Self::R => Self::T,
            Self::T => Self::R,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DihedralRepSpec {
    Trivial,
    Sign,
    EpsR,
    EpsT,
    /// `rho_k` of `D_m`, `1 <= k <= m/2`.
    RhoK {
        m: u32,
        k: u32,
    },
    /// `varrho_z = varrho_{u,u}` of `D_inf`, `u = u(z)`.
    VarrhoZ {
        z: Complex64,
    },
    VarrhoRT {
        absorbing: Absorbing,
    },
    /// The non-split extension of the trivial by the sign representation.
    /// Catalogued only; never accepted as a bond parameter.
    Exotic,
}

impl DihedralRepSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::RhoK { m, k } if m < 2 || k < 1 || 2 * k > m => {
                Err(Error::InvalidDihedralSpec(format!("rho_k needs 1 <= k <= m/2 (got m = {m}, k = {k})")))
            }
            Self::VarrhoZ { z } if !z.is_finite() => Err(Error::InvalidDihedralSpec(format!("z = {z} is not finite"))),
            _ => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Trivial | Self::Sign | Self::EpsR | Self::EpsT => 1,
            _ => 2,
        }
    }

    /// The same representation with the roles of `r` and `t` exchanged.
    /// `None` for the exotic module, which has no catalog name under the swap.
    pub fn swapped(&self) -> Option<Self> {
        Some(match *self {
            Self::EpsR => Self::EpsT,
            Self::EpsT => Self::EpsR,
            Self::VarrhoRT { absorbing } => Self::VarrhoRT { absorbing: absorbing.swapped() },
            Self::Exotic => return None,
            other => other,
        })
    }
}

/// `gcd(a, b)` for bond arithmetic.
pub fn gcd(a: u32, b: u32) -> u32 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `cos(k pi / m)`, exact at the rational values `0` and `1/2`.
pub fn cos_ratio(k: u32, m: u32) -> f64 {
    let d = gcd(k, m).max(1);
    match (k / d, m / d) {
        (1, 2) => 0.0,
        (1, 3) => 0.5,
        (kk, mm) => (f64::from(kk) * std::f64::consts::PI / f64::from(mm)).cos(),
    }
}

/// The fixed square root `u(z)`: principal branch, so positive on positive reals.
pub fn sqrt_branch(z: Complex64) -> Complex64 {
    // normalize -0.0 so negative reals land on the upper half axis
    let z = Complex64::new(z.re, if z.im == 0.0 { 0.0 } else { z.im });
    z.sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoByTwoPair {
    pub mat_r: CMatrix,
    pub mat_t: CMatrix,
}

impl TwoByTwoPair {
    /// `varrho_{x,y}`: `r . beta_t = beta_t + x beta_r`, `t . beta_r = beta_r + y beta_t`.
    pub fn from_coefficients(x: Complex64, y: Complex64) -> Self {
        Self {
            mat_r: CMatrix::from_row_slice(2, 2, &[-ONE, x, ZERO, ONE]),
            mat_t: CMatrix::from_row_slice(2, 2, &[ONE, ZERO, y, -ONE]),
        }
    }

    /// Coefficient of `beta_r` in `r . beta_t`.
    pub fn c_rt(&self) -> Complex64 {
        self.mat_r[(0, 1)]
    }

    /// Coefficient of `beta_t` in `t . beta_r`.
    pub fn c_tr(&self) -> Complex64 {
        self.mat_t[(1, 0)]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RepMatrices {
    One { r: Complex64, t: Complex64 },
    Two(TwoByTwoPair),
}

impl RepMatrices {
    pub fn as_matrices(&self) -> (CMatrix, CMatrix) {
        match self {
            Self::One { r, t } => (CMatrix::from_element(1, 1, *r), CMatrix::from_element(1, 1, *t)),
            Self::Two(p) => (p.mat_r.clone(), p.mat_t.clone()),
        }
    }
}

pub fn matrices(spec: &DihedralRepSpec) -> Result<RepMatrices> {
    spec.validate()?;
    let one = |r: f64, t: f64| RepMatrices::One { r: real(r), t: real(t) };
    Ok(match *spec {
        DihedralRepSpec::Trivial => one(1.0, 1.0),
        DihedralRepSpec::Sign => one(-1.0, -1.0),
        DihedralRepSpec::EpsR => one(-1.0, 1.0),
        DihedralRepSpec::EpsT => one(1.0, -1.0),
        DihedralRepSpec::RhoK { m, k } => {
            let c = real(2.0 * cos_ratio(k, m));
            RepMatrices::Two(TwoByTwoPair::from_coefficients(c, c))
        }
        DihedralRepSpec::VarrhoZ { z } => {
            let u = sqrt_branch(z);
            RepMatrices::Two(TwoByTwoPair::from_coefficients(u, u))
        }
        DihedralRepSpec::VarrhoRT { absorbing: Absorbing::R } => {
            RepMatrices::Two(TwoByTwoPair::from_coefficients(ONE, ZERO))
        }
        DihedralRepSpec::VarrhoRT { absorbing: Absorbing::T } => {
            RepMatrices::Two(TwoByTwoPair::from_coefficients(ZERO, ONE))
        }
        DihedralRepSpec::Exotic => RepMatrices::Two(TwoByTwoPair {
            mat_r: CMatrix::from_row_slice(2, 2, &[-ONE, ZERO, ZERO, ONE]),
            mat_t: CMatrix::from_row_slice(2, 2, &[-ONE, ONE, ZERO, ONE]),
        }),
    })
}

/// Gram matrix `B(beta_i, beta_j)` of an invariant bilinear form.
///
/// For `varrho_0 = eps_r + eps_t` the invariant forms are all diagonal
/// matrices; the identity is returned as a representative.
pub fn invariant_bilinear(spec: &DihedralRepSpec) -> Result<CMatrix> {
    spec.validate()?;
    let sym = |off: Complex64| CMatrix::from_row_slice(2, 2, &[ONE, off, off, ONE]);
    match *spec {
        DihedralRepSpec::RhoK { m, k } => {
            if 2 * k == m {
                return Err(Error::FormNotCovered { m, k });
            }
            Ok(sym(real(-cos_ratio(k, m))))
        }
        DihedralRepSpec::VarrhoZ { z } => Ok(sym(-sqrt_branch(z) / 2.0)),
        DihedralRepSpec::VarrhoRT { absorbing: Absorbing::T } => {
            Ok(CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]))
        }
        DihedralRepSpec::VarrhoRT { absorbing: Absorbing::R } | DihedralRepSpec::Exotic => {
            Ok(CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]))
        }
        _ => Err(Error::InvalidDihedralSpec("invariant_bilinear needs a two-dimensional representation".into())),
    }
}

/// Tolerance for matching `c_rt * c_tr` against `4 cos^2(k pi / m)`.
pub const IDENTIFY_TOL: f64 = 1e-6;

/// Recovers the bond parameter from the two off-diagonal coefficients of a
/// rank-two (IR) restriction: `c_rt` is the coefficient of `alpha_r` in
/// `r . alpha_t`, `c_tr` that of `alpha_t` in `t . alpha_r`.
pub fn identify_bond(c_rt: Complex64, c_tr: Complex64, m: BondOrder) -> Result<DihedralRepSpec> {
    let product = c_rt * c_tr;
    match m {
        BondOrder::Finite(m) => {
            let err = || Error::NotDihedralRestriction { product: product.to_string(), m: m.to_string() };
            if m < 2 {
                return Err(err());
            }
            let zero_r = c_rt.norm() <= IDENTIFY_TOL;
            let zero_t = c_tr.norm() <= IDENTIFY_TOL;
            for k in 1..=m / 2 {
                let target = 4.0 * cos_ratio(k, m).powi(2);
                if (product - real(target)).norm() <= IDENTIFY_TOL {
                    // rho_{m/2} = eps_r + eps_t needs both coefficients to vanish
                    if 2 * k == m && !(zero_r && zero_t) {
                        return Err(err());
                    }
                    return Ok(DihedralRepSpec::RhoK { m, k });
                }
            }
            Err(err())
        }
        BondOrder::Infinite => {
            let zero_r = c_rt.norm() <= DEFAULT_TOL;
            let zero_t = c_tr.norm() <= DEFAULT_TOL;
            Ok(match (zero_r, zero_t) {
                (true, true) => DihedralRepSpec::VarrhoZ { z: ZERO },
                (false, true) => DihedralRepSpec::VarrhoRT { absorbing: Absorbing::R },
                (true, false) => DihedralRepSpec::VarrhoRT { absorbing: Absorbing::T },
                (false, false) => DihedralRepSpec::VarrhoZ { z: product },
            })
        }
    }
}
