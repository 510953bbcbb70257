//! Coxeter systems and words in their rank-two parabolic subgroups.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result, SystemViolation};

/// Order of `st` in a Coxeter presentation; `Infinite` means no relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BondOrder {
    Finite(u32),
    Infinite,
}

impl BondOrder {
    pub fn finite(self) -> Option<u32> {
        match self {
            Self::Finite(m) => Some(m),
            Self::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Self::Infinite)
    }

    /// `true` when the pair is joined in the Coxeter graph (`m >= 3`).
    pub fn is_edge(self) -> bool {
        match self {
            Self::Finite(m) => m >= 3,
            Self::Infinite => true,
        }
    }
}

impl fmt::Display for BondOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(m) => write!(f, "{m}"),
            Self::Infinite => f.write_str("inf"),
        }
    }
}

/// Unvalidated description of a Coxeter system, as read from input.
#[derive(Debug, Clone, Default)]
pub struct SystemDescription {
    pub generators: Vec<String>,
    pub bonds: Vec<(String, String, BondOrder)>,
    /// Fills pairs absent from `bonds`; without it a missing pair is an error.
    pub default_bond: Option<BondOrder>,
}

impl SystemDescription {
    /// Collects every violated invariant.
    pub fn validate(&self) -> std::result::Result<(), Vec<SystemViolation>> {
        self.resolve().map(|_| ())
    }

    fn resolve(&self) -> std::result::Result<Vec<Vec<BondOrder>>, Vec<SystemViolation>> {
        let mut errors = Vec::new();
        let mut index = HashMap::new();
        for (i, g) in self.generators.iter().enumerate() {
            if g.is_empty() {
                errors.push(SystemViolation::EmptyLabel);
            }
            if index.insert(g.as_str(), i).is_some() {
                errors.push(SystemViolation::DuplicateLabel(g.clone()));
            }
        }

        let n = self.generators.len();
        let mut table: Vec<Vec<Option<BondOrder>>> = vec![vec![None; n]; n];
        let mut reported = HashSet::new();
        for (a, b, m) in &self.bonds {
            let (Some(&i), Some(&j)) = (index.get(a.as_str()), index.get(b.as_str())) else {
                for l in [a, b] {
                    if !index.contains_key(l.as_str()) {
                        errors.push(SystemViolation::UnknownLabel(l.clone()));
                    }
                }
                continue;
            };
            if i == j {
                errors.push(SystemViolation::SelfBond(a.clone()));
                continue;
            }
            if let BondOrder::Finite(order) = *m {
                if order < 2 {
                    errors.push(SystemViolation::BondTooSmall { pair: (a.clone(), b.clone()), order });
                }
            }
            match table[i][j] {
                Some(prev) if prev != *m => {
                    if reported.insert((i.min(j), i.max(j))) {
                        errors.push(SystemViolation::ConflictingBond(a.clone(), b.clone()));
                    }
                }
                _ => {
                    table[i][j] = Some(*m);
                    table[j][i] = Some(*m);
                }
            }
        }
        if let Some(BondOrder::Finite(order)) = self.default_bond {
            if order < 2 {
                errors.push(SystemViolation::BondTooSmall { pair: ("*".into(), "*".into()), order });
            }
        }

        let mut bonds = vec![vec![BondOrder::Finite(1); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                match table[i][j].or(self.default_bond) {
                    Some(m) => {
                        bonds[i][j] = m;
                        bonds[j][i] = m;
                    }
                    None => errors
                        .push(SystemViolation::MissingPair(self.generators[i].clone(), self.generators[j].clone())),
                }
            }
        }
        if errors.is_empty() {
            Ok(bonds)
        } else {
            Err(errors)
        }
    }
}

/// A finite-rank Coxeter system. Immutable once built; generator order is
/// the canonical index used everywhere downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterSystem {
    labels: Vec<String>,
    bonds: Vec<Vec<BondOrder>>,
}

impl TryFrom<&SystemDescription> for CoxeterSystem {
    type Error = Error;

    fn try_from(desc: &SystemDescription) -> Result<Self> {
        let bonds = desc.resolve().map_err(Error::InvalidSystem)?;
        Ok(Self { labels: desc.generators.clone(), bonds })
    }
}

impl CoxeterSystem {
    pub fn new(generators: Vec<String>, bonds: Vec<(String, String, BondOrder)>) -> Result<Self> {
        Self::try_from(&SystemDescription { generators, bonds, default_bond: None })
    }

    /// Builds a system from a bond function on index pairs `i < j`.
    pub fn from_fn(generators: Vec<String>, mut bond: impl FnMut(usize, usize) -> BondOrder) -> Result<Self> {
        let n = generators.len();
        let mut bonds = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                bonds.push((generators[i].clone(), generators[j].clone(), bond(i, j)));
            }
        }
        Self::new(generators, bonds)
    }

    /// The rank-two system `{r, t}` with `m_rt = m`.
    pub fn dihedral(m: BondOrder) -> Result<Self> {
        Self::new(vec!["r".into(), "t".into()], vec![("r".into(), "t".into(), m)])
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// `m_ij`; the diagonal is `Finite(1)`.
    pub fn bond(&self, i: usize, j: usize) -> BondOrder {
        self.bonds[i][j]
    }

    /// All index pairs `(i, j)` with `i < j`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.rank();
        (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
    }

    pub fn has_infinite_bond(&self) -> bool {
        self.pairs().any(|(i, j)| self.bond(i, j).is_infinite())
    }
}

/// Which generator of the pair a dihedral word starts with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Leading {
    R,
    T,
}

/// The alternating word `rtr...` or `trt...` of a given length in the
/// subgroup generated by `pair = (r, t)`. Length zero is the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DihedralWord {
    pub pair: (usize, usize),
    pub length: usize,
    pub leading: Leading,
}

impl DihedralWord {
    pub fn identity(pair: (usize, usize)) -> Self {
        Self { pair, length: 0, leading: Leading::R }
    }

    /// Generator indices of the word, left to right.
    pub fn letters(&self) -> Vec<usize> {
        let (r, t) = self.pair;
        let (a, b) = match self.leading {
            Leading::R => (r, t),
            Leading::T => (t, r),
        };
        (0..self.length).map(|i| if i % 2 == 0 { a } else { b }).collect()
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.length == 0 {
            return "e".to_string();
        }
        self.letters().iter().map(|&i| labels[i].as_str()).collect()
    }
}

/// All `2m` elements of the dihedral group of order `2m` generated by `pair`:
/// `e`, then `r_k, t_k` for `k < m`, then the longest element `r_m = t_m`.
pub fn enumerate_dihedral(m: BondOrder, pair: (usize, usize)) -> Result<Vec<DihedralWord>> {
    let m = match m {
        BondOrder::Infinite => return Err(Error::InfiniteBond),
        BondOrder::Finite(m) if m < 2 => {
            return Err(Error::InvalidSystem(vec![SystemViolation::BondTooSmall {
                pair: (pair.0.to_string(), pair.1.to_string()),
                order: m,
            }]))
        }
        BondOrder::Finite(m) => m as usize,
    };
    let mut words = Vec::with_capacity(2 * m);
    words.push(DihedralWord::identity(pair));
    for length in 1..m {
        words.push(DihedralWord { pair, length, leading: Leading::R });
        words.push(DihedralWord { pair, length, leading: Leading::T });
    }
    words.push(DihedralWord { pair, length: m, leading: Leading::R });
    Ok(words)
}
