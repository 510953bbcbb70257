//! IR-representations of Coxeter groups: construction from bond parameters
//! and scalars, classification by a character of the first homology of the
//! reduced Coxeter graph, and the reducibility, form, duality and cell
//! computations built on top of it.

pub mod affine;
pub mod analysis;
pub mod cli;
pub mod coxeter;
pub mod dihedral;
pub mod error;
pub mod graph;
pub mod hecke;
pub mod io;
pub mod ir;
pub mod linalg;

pub use coxeter::{BondOrder, CoxeterSystem, SystemDescription};
pub use dihedral::{Absorbing, DihedralRepSpec};
pub use error::{Error, Result};
pub use graph::{Character, CircuitBasis, SimpleGraph};
pub use ir::{build, character_of, datum_from_classification, extract_datum, isomorphism};
pub use ir::{BondSpecs, Classification, IRDatum, Isomorphism, Representation, TildeSystem};
