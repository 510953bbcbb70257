use std::fmt;

use thiserror::Error;

/// A single violated invariant of a Coxeter system description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SystemViolation {
    DuplicateLabel(String),
    EmptyLabel,
    UnknownLabel(String),
    SelfBond(String),
    BondTooSmall { pair: (String, String), order: u32 },
    MissingPair(String, String),
    ConflictingBond(String, String),
}

impl fmt::Display for SystemViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DuplicateLabel(l) => write!(f, "duplicate generator label `{l}`"),
            Self::EmptyLabel => write!(f, "empty generator label"),
            Self::UnknownLabel(l) => write!(f, "bond refers to unknown generator `{l}`"),
            Self::SelfBond(l) => write!(f, "bond between `{l}` and itself"),
            Self::BondTooSmall { pair, order } => {
                write!(f, "bond order {order} < 2 on pair ({}, {})", pair.0, pair.1)
            }
            Self::MissingPair(a, b) => write!(f, "missing bond order for pair ({a}, {b})"),
            Self::ConflictingBond(a, b) => write!(f, "conflicting bond orders for pair ({a}, {b})"),
        }
    }
}

fn join_violations(v: &[SystemViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Coxeter system: {}", join_violations(.0))]
    InvalidSystem(Vec<SystemViolation>),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("path is not closed")]
    PathNotClosed,

    #[error("path uses non-edge {{{0}, {1}}}")]
    NonEdge(usize, usize),

    #[error("infinite bond order is not allowed here")]
    InfiniteBond,

    #[error("invalid dihedral representation: {0}")]
    InvalidDihedralSpec(String),

    #[error("invariant form for rho_k requires k < m/2 (got k = {k}, m = {m})")]
    FormNotCovered { m: u32, k: u32 },

    #[error("not a valid dihedral restriction: c_rt * c_tr = {product} for m = {m}")]
    NotDihedralRestriction { product: String, m: String },

    #[error("invalid datum: {0}")]
    InvalidDatum(String),

    #[error("condition (IR) violated at generator `{generator}`: {reason}")]
    IrViolated { generator: String, reason: String },

    #[error("character has {got} values but the circuit basis has {expected} chords")]
    ChiCountMismatch { expected: usize, got: usize },

    #[error("data belong to different Coxeter systems")]
    SystemMismatch,

    #[error("kernel vector is not fixed by generator `{0}`")]
    KernelNotFixed(String),

    #[error("matrix for `{0}` is not an involution")]
    NotInvolution(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
