//! Construction and classification of IR-representations.
//!
//! An IR-representation of `(W, S)` has a basis `{alpha_s}` in which every
//! generator acts as a reflection `s . alpha_s = -alpha_s` fixing a
//! hyperplane. It is determined by a bond parameter per pair of generators
//! together with nonzero scalars `a_r^t`; isomorphism classes correspond to
//! the bond parameters plus a character of `H_1` of the reduced Coxeter
//! graph (see [`TildeSystem`]).

use num_complex::Complex64;

use crate::coxeter::{BondOrder, CoxeterSystem};
use crate::dihedral::{cos_ratio, gcd, sqrt_branch, Absorbing, DihedralRepSpec};
use crate::error::{Error, Result};
use crate::graph::{spanning_forest, Character, CircuitBasis, SimpleGraph};
use crate::linalg::{self, approx_eq, identity, residual, CMatrix, CVector, ONE, ZERO};

/// Largest `m` searched when matching `z = 4 cos^2(k pi / m)` for a
/// `varrho_z` bond.
pub const MAX_TILDE_ORDER: u32 = 1000;

/// Bond parameters for every pair of a Coxeter system.
///
/// `spec(r, t)` is expressed from `r`'s side, i.e. with `r` in the role of
/// the first generator of the dihedral catalog. The two sides agree up to
/// [`DihedralRepSpec::swapped`].
#[derive(Debug, Clone, PartialEq)]
pub struct BondSpecs {
    system: CoxeterSystem,
    specs: Vec<Vec<DihedralRepSpec>>,
}

impl BondSpecs {
    /// `k = 1` on finite bonds, `varrho_4` on infinite ones.
    pub fn geometric(system: CoxeterSystem) -> Self {
        let n = system.rank();
        let mut specs = vec![vec![DihedralRepSpec::Trivial; n]; n];
        for (i, j) in system.pairs() {
            let s = match system.bond(i, j) {
                BondOrder::Finite(m) => DihedralRepSpec::RhoK { m, k: 1 },
                BondOrder::Infinite => DihedralRepSpec::VarrhoZ { z: Complex64::new(4.0, 0.0) },
            };
            specs[i][j] = s;
            specs[j][i] = s;
        }
        Self { system, specs }
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn spec(&self, r: usize, t: usize) -> DihedralRepSpec {
        self.specs[r][t]
    }

    /// Sets the parameter of `{r, t}`; `spec` is read from `r`'s side.
    pub fn set(&mut self, r: usize, t: usize, spec: DihedralRepSpec) -> Result<()> {
        let n = self.system.rank();
        if r >= n || t >= n || r == t {
            return Err(Error::InvalidDatum(format!("no generator pair ({r}, {t})")));
        }
        spec.validate()?;
        let lr = self.system.label(r).to_string();
        let lt = self.system.label(t).to_string();
        match (self.system.bond(r, t), spec) {
            (BondOrder::Finite(m), DihedralRepSpec::RhoK { m: sm, .. }) if sm == m => {}
            (BondOrder::Finite(m), _) => {
                return Err(Error::InvalidDatum(format!(
                    "bond ({lr}, {lt}) has order {m} and needs rho_k with m = {m}, got {spec:?}"
                )))
            }
            (BondOrder::Infinite, DihedralRepSpec::VarrhoZ { .. } | DihedralRepSpec::VarrhoRT { .. }) => {}
            (BondOrder::Infinite, _) => {
                return Err(Error::InvalidDatum(format!(
                    "infinite bond ({lr}, {lt}) needs varrho_z or varrho_r^t, got {spec:?}"
                )))
            }
        }
        let swapped = spec.swapped().expect("allowed bond variants have a swapped form");
        self.specs[r][t] = spec;
        self.specs[t][r] = swapped;
        Ok(())
    }

    /// `m~_rt` from the four reduction rules.
    pub fn tilde_bond(&self, r: usize, t: usize) -> BondOrder {
        if r == t {
            return BondOrder::Finite(1);
        }
        match self.spec(r, t) {
            DihedralRepSpec::RhoK { m, k } => BondOrder::Finite(m / gcd(m, k)),
            DihedralRepSpec::VarrhoZ { z } if z == ZERO => BondOrder::Finite(2),
            DihedralRepSpec::VarrhoZ { z } => match dihedral_order_of(z) {
                Some(m) => BondOrder::Finite(m),
                None => BondOrder::Infinite,
            },
            _ => BondOrder::Infinite,
        }
    }

    pub fn tilde_system(&self) -> TildeSystem {
        let n = self.system.rank();
        let tilde_bond: Vec<Vec<BondOrder>> = (0..n).map(|i| (0..n).map(|j| self.tilde_bond(i, j)).collect()).collect();
        let edges: Vec<(usize, usize)> = self.system.pairs().filter(|&(i, j)| tilde_bond[i][j].is_edge()).collect();
        let graph = SimpleGraph::new(self.system.labels().to_vec(), &edges).expect("pairs form a simple graph");
        let basis = spanning_forest(&graph);
        TildeSystem { tilde_bond, graph, basis }
    }

    /// Parameter-wise comparison; `z` values compared with relative tolerance.
    pub fn same_as(&self, other: &Self, tol: f64) -> Option<(usize, usize)> {
        self.system.pairs().find(|&(i, j)| !spec_eq(self.spec(i, j), other.spec(i, j), tol))
    }

    pub fn has_absorbing_bond(&self) -> bool {
        self.system.pairs().any(|(i, j)| matches!(self.spec(i, j), DihedralRepSpec::VarrhoRT { .. }))
    }
}

fn spec_eq(a: DihedralRepSpec, b: DihedralRepSpec, tol: f64) -> bool {
    match (a, b) {
        (DihedralRepSpec::VarrhoZ { z: x }, DihedralRepSpec::VarrhoZ { z: y }) => approx_eq(x, y, tol),
        _ => a == b,
    }
}

/// If `z = 4 cos^2(k pi / m)` for coprime `1 <= k < m/2`, `m <= MAX_TILDE_ORDER`,
/// returns that `m`.
pub fn dihedral_order_of(z: Complex64) -> Option<u32> {
    const TOL: f64 = 1e-9;
    if z.im.abs() > TOL || z.re <= 0.0 || z.re >= 4.0 + TOL {
        return None;
    }
    let theta = (z.re.max(0.0).sqrt() / 2.0).min(1.0).acos() / std::f64::consts::PI;
    for m in 3..=MAX_TILDE_ORDER {
        let guess = (theta * f64::from(m)).round() as u32;
        for k in guess.saturating_sub(1)..=guess + 1 {
            if k == 0 || 2 * k >= m || gcd(k, m) != 1 {
                continue;
            }
            let v = 4.0 * cos_ratio(k, m).powi(2);
            if (z - Complex64::new(v, 0.0)).norm() < TOL {
                return Some(m);
            }
        }
    }
    None
}

/// The reduced Coxeter data `m~` and its graph, whose first homology carries
/// the classifying character.
#[derive(Debug, Clone)]
pub struct TildeSystem {
    pub tilde_bond: Vec<Vec<BondOrder>>,
    pub graph: SimpleGraph,
    pub basis: CircuitBasis,
}

impl TildeSystem {
    pub fn component_count(&self) -> usize {
        self.basis.components().count
    }
}

/// Full construction input: bond parameters plus the scalars `a_r^t`.
#[derive(Debug, Clone, PartialEq)]
pub struct IRDatum {
    bonds: BondSpecs,
    /// `scalars[r][t] = a_r^t`; the diagonal is unused and kept at 1.
    scalars: Vec<Vec<Complex64>>,
}

impl IRDatum {
    pub fn new(bonds: BondSpecs, scalars: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = bonds.system.rank();
        if scalars.len() != n || scalars.iter().any(|row| row.len() != n) {
            return Err(Error::Dimension(format!("scalar table must be {n} x {n}")));
        }
        for (r, row) in scalars.iter().enumerate() {
            for (t, a) in row.iter().enumerate() {
                if r != t && (*a == ZERO || !a.is_finite()) {
                    return Err(Error::InvalidDatum(format!(
                        "scalar a_{}^{} must be nonzero and finite",
                        bonds.system.label(r),
                        bonds.system.label(t)
                    )));
                }
            }
        }
        Ok(Self { bonds, scalars })
    }

    /// Geometric parameters and all scalars equal to 1.
    pub fn geometric(system: CoxeterSystem) -> Self {
        let n = system.rank();
        Self { bonds: BondSpecs::geometric(system), scalars: vec![vec![ONE; n]; n] }
    }

    pub fn with_bond(mut self, r: usize, t: usize, spec: DihedralRepSpec) -> Result<Self> {
        self.bonds.set(r, t, spec)?;
        Ok(self)
    }

    /// Sets `a_r^t`.
    pub fn with_scalar(mut self, r: usize, t: usize, a: Complex64) -> Result<Self> {
        let n = self.system().rank();
        if r >= n || t >= n || r == t {
            return Err(Error::InvalidDatum(format!("no generator pair ({r}, {t})")));
        }
        if a == ZERO || !a.is_finite() {
            return Err(Error::InvalidDatum("scalars must be nonzero and finite".into()));
        }
        self.scalars[r][t] = a;
        Ok(self)
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.bonds.system
    }

    pub fn bonds(&self) -> &BondSpecs {
        &self.bonds
    }

    /// `a_r^t`.
    pub fn scalar(&self, r: usize, t: usize) -> Complex64 {
        self.scalars[r][t]
    }

    pub fn scalars(&self) -> &[Vec<Complex64>] {
        &self.scalars
    }

    /// `a_r^t / a_t^r`.
    pub fn ratio(&self, r: usize, t: usize) -> Complex64 {
        self.scalars[r][t] / self.scalars[t][r]
    }

    /// Coefficient of `alpha_r` in `r . alpha_t`.
    pub fn coefficient(&self, r: usize, t: usize) -> Complex64 {
        if r == t {
            return ZERO;
        }
        match self.bonds.spec(r, t) {
            DihedralRepSpec::RhoK { m, k } if 2 * k == m => ZERO,
            DihedralRepSpec::RhoK { m, k } => 2.0 * cos_ratio(k, m) * self.ratio(r, t),
            DihedralRepSpec::VarrhoZ { z } => sqrt_branch(z) * self.ratio(r, t),
            DihedralRepSpec::VarrhoRT { absorbing: Absorbing::R } => self.ratio(r, t),
            DihedralRepSpec::VarrhoRT { absorbing: Absorbing::T } => ZERO,
            other => unreachable!("bond parameter {other:?} rejected at construction"),
        }
    }

    pub fn tilde_system(&self) -> TildeSystem {
        self.bonds.tilde_system()
    }

    /// Whether every bond is finite.
    pub fn is_finite_type(&self) -> bool {
        !self.system().has_infinite_bond()
    }

    /// The datum with `b_r^t = a_t^r`.
    pub fn transposed_scalars(&self) -> Self {
        let n = self.system().rank();
        let scalars = (0..n).map(|r| (0..n).map(|t| self.scalars[t][r]).collect()).collect();
        Self { bonds: self.bonds.clone(), scalars }
    }
}

/// Generator matrices (acting on columns) plus designated reflection vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    labels: Vec<String>,
    gens: Vec<CMatrix>,
    alpha: Vec<CVector>,
}

impl Representation {
    pub fn new(labels: Vec<String>, gens: Vec<CMatrix>, alpha: Vec<CVector>) -> Result<Self> {
        if gens.len() != labels.len() || alpha.len() != labels.len() {
            return Err(Error::Dimension("one matrix and one reflection vector per generator".into()));
        }
        let dim = gens.first().map_or(0, |g| g.nrows());
        if gens.iter().any(|g| g.shape() != (dim, dim)) || alpha.iter().any(|a| a.len() != dim) {
            return Err(Error::Dimension(format!("all matrices must be {dim} x {dim}")));
        }
        Ok(Self { labels, gens, alpha })
    }

    pub fn dim(&self) -> usize {
        self.gens.first().map_or(0, |g| g.nrows())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gens(&self) -> &[CMatrix] {
        &self.gens
    }

    pub fn gen(&self, s: usize) -> &CMatrix {
        &self.gens[s]
    }

    pub fn alpha(&self) -> &[CVector] {
        &self.alpha
    }

    /// Max entry residual of `s^2 = e` and `(rt)^{m_rt} = e` over finite bonds.
    pub fn relation_residual(&self, system: &CoxeterSystem) -> f64 {
        let id = identity(self.dim());
        let mut worst = self.gens.iter().map(|g| residual(&(g * g), &id)).fold(0.0, f64::max);
        for (r, t) in system.pairs() {
            if let BondOrder::Finite(m) = system.bond(r, t) {
                let rt = &self.gens[r] * &self.gens[t];
                let mut p = id.clone();
                for _ in 0..m {
                    p = &p * &rt;
                }
                worst = worst.max(residual(&p, &id));
            }
        }
        worst
    }

    /// Checks condition (IR) with `alpha_s` the standard basis.
    pub fn check_ir(&self, tol: f64) -> Result<()> {
        let n = self.dim();
        let id = identity(n);
        for (s, (g, a)) in self.gens.iter().zip(&self.alpha).enumerate() {
            let fail = |reason: String| Error::IrViolated { generator: self.labels[s].clone(), reason };
            if n != self.labels.len() {
                return Err(fail(format!("dimension {n} differs from the number of generators")));
            }
            let e = CVector::from_fn(n, |i, _| if i == s { ONE } else { ZERO });
            if linalg::max_abs_vec(&(a - &e)) > tol {
                return Err(fail("reflection vector is not the standard basis vector".into()));
            }
            if linalg::max_abs_vec(&(g * &e + &e)) > tol {
                return Err(fail("s . alpha_s != -alpha_s".into()));
            }
            let r = linalg::rank(&(g - &id), tol);
            if r != 1 {
                return Err(fail(format!("rank(s - 1) = {r}, expected 1")));
            }
        }
        Ok(())
    }
}

/// Builds the IR-representation of a datum on `V = span{alpha_s}`.
pub fn build(datum: &IRDatum) -> Representation {
    let n = datum.system().rank();
    let gens = (0..n)
        .map(|r| {
            let mut g = identity(n);
            g[(r, r)] = -ONE;
            for t in (0..n).filter(|&t| t != r) {
                g[(r, t)] = datum.coefficient(r, t);
            }
            g
        })
        .collect();
    let alpha = (0..n).map(|s| CVector::from_fn(n, |i, _| if i == s { ONE } else { ZERO })).collect();
    Representation { labels: datum.system().labels().to_vec(), gens, alpha }
}

/// Classifying data: bond parameters and a character of `H_1` of the tilde
/// graph, given on its canonical chord basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub bonds: BondSpecs,
    pub chi: Character,
}

impl Classification {
    pub fn system(&self) -> &CoxeterSystem {
        self.bonds.system()
    }
}

/// Value of `(r, t) -> a_t^r / a_r^t` multiplied along a vertex path.
pub fn path_character(datum: &IRDatum, path: &[usize]) -> Complex64 {
    path.windows(2).fold(ONE, |acc, w| {
        let (r, t) = (w[0], w[1]);
        acc * datum.scalar(t, r) / datum.scalar(r, t)
    })
}

pub fn character_of(datum: &IRDatum) -> Classification {
    let tilde = datum.tilde_system();
    let values = tilde.basis.circuits().iter().map(|c| path_character(datum, c)).collect();
    Classification {
        bonds: datum.bonds.clone(),
        chi: Character::new(values).expect("ratios of nonzero scalars are nonzero"),
    }
}

/// Canonical datum: each chord `(u, v)` carries `a_v^u = chi(c_e)`, every
/// other scalar is 1.
pub fn datum_from_classification(c: &Classification) -> Result<IRDatum> {
    let tilde = c.bonds.tilde_system();
    if tilde.basis.rank() != c.chi.len() {
        return Err(Error::ChiCountMismatch { expected: tilde.basis.rank(), got: c.chi.len() });
    }
    let n = c.system().rank();
    let mut scalars = vec![vec![ONE; n]; n];
    for (&(u, v), &x) in tilde.basis.chords().iter().zip(c.chi.values()) {
        scalars[v][u] = x;
    }
    IRDatum::new(c.bonds.clone(), scalars)
}

#[derive(Debug, Clone, PartialEq)]
pub enum NonIsoReason {
    BondsDiffer { pair: (usize, usize) },
    CharacterDiffers { chord: (usize, usize), left: Complex64, right: Complex64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Isomorphism {
    NotIsomorphic(NonIsoReason),
    /// `matrix` maps `V_1` to `V_2`; `residual` is the largest entry of
    /// `phi g1_s - g2_s phi` over generators.
    Intertwiner {
        matrix: CMatrix,
        residual: f64,
    },
}

impl Isomorphism {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Self::Intertwiner { .. })
    }
}

/// Decides whether two data define isomorphic representations and, if so,
/// returns an explicit intertwiner `alpha_s -> lambda_s alpha'_s`.
pub fn isomorphism(d1: &IRDatum, d2: &IRDatum, tol: f64) -> Result<Isomorphism> {
    if d1.system() != d2.system() {
        return Err(Error::SystemMismatch);
    }
    if let Some(pair) = d1.bonds.same_as(&d2.bonds, tol) {
        return Ok(Isomorphism::NotIsomorphic(NonIsoReason::BondsDiffer { pair }));
    }
    let tilde = d1.tilde_system();
    let (c1, c2) = (character_of(d1), character_of(d2));
    for ((&chord, &x), &y) in tilde.basis.chords().iter().zip(c1.chi.values()).zip(c2.chi.values()) {
        if !approx_eq(x, y, tol) {
            return Ok(Isomorphism::NotIsomorphic(NonIsoReason::CharacterDiffers { chord, left: x, right: y }));
        }
    }

    let n = d1.system().rank();
    let mut lambda = vec![ONE; n];
    for v in tilde.basis.bfs_order() {
        if let Some(p) = tilde.basis.forest_parent(v) {
            lambda[v] = lambda[p] * d1.scalar(p, v) * d2.scalar(v, p) / (d1.scalar(v, p) * d2.scalar(p, v));
        }
    }
    let matrix = CMatrix::from_diagonal(&CVector::from_vec(lambda));
    let (r1, r2) = (build(d1), build(d2));
    let residual =
        r1.gens().iter().zip(r2.gens()).map(|(g1, g2)| residual(&(&matrix * g1), &(g2 * &matrix))).fold(0.0, f64::max);
    Ok(Isomorphism::Intertwiner { matrix, residual })
}

/// Reads a datum back from a representation satisfying (IR) in the
/// standard basis; `build` of the result reproduces the matrices.
pub fn extract_datum(rep: &Representation, system: &CoxeterSystem, tol: f64) -> Result<IRDatum> {
    if rep.labels() != system.labels() {
        return Err(Error::SystemMismatch);
    }
    rep.check_ir(tol)?;
    let n = system.rank();
    let mut bonds = BondSpecs::geometric(system.clone());
    let mut scalars = vec![vec![ONE; n]; n];
    for (r, t) in system.pairs() {
        let c_rt = rep.gen(r)[(r, t)];
        let c_tr = rep.gen(t)[(t, r)];
        let spec = crate::dihedral::identify_bond(c_rt, c_tr, system.bond(r, t))?;
        let ratio = match spec {
            DihedralRepSpec::RhoK { m, k } if 2 * k != m => c_rt / (2.0 * cos_ratio(k, m)),
            DihedralRepSpec::VarrhoZ { z } if z != ZERO => c_rt / sqrt_branch(z),
            DihedralRepSpec::VarrhoRT { absorbing: Absorbing::R } => c_rt,
            DihedralRepSpec::VarrhoRT { absorbing: Absorbing::T } => c_tr.inv(),
            _ => ONE,
        };
        bonds.set(r, t, spec)?;
        scalars[r][t] = ratio;
    }
    IRDatum::new(bonds, scalars)
}
