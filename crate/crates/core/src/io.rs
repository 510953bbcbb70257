//! JSON input documents and report helpers.
//!
//! Complex numbers are `[re, im]`. Pair keys are `"a-b"`; labels may
//! themselves contain `-` as long as exactly one split yields two known
//! generators. Chord keys use the canonical orientation of the circuit
//! basis; a reversed key is accepted and its value inverted.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coxeter::{BondOrder, CoxeterSystem, SystemDescription};
use crate::dihedral::{Absorbing, DihedralRepSpec};
use crate::error::{Error, Result};
use crate::graph::Character;
use crate::ir::{datum_from_classification, BondSpecs, Classification, IRDatum, Representation};
use crate::linalg::{CMatrix, CVector, ONE};

pub type ComplexDoc = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BondValue {
    Finite(u32),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDoc {
    pub generators: Vec<String>,
    #[serde(default)]
    pub bonds: BTreeMap<String, BondValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default_bond: Option<BondValue>,
}

/// Exactly one of `k`, `z`, `absorb`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BondSpecDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<ComplexDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absorb: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDoc {
    #[serde(default)]
    pub bonds: BTreeMap<String, BondSpecDoc>,
    /// `"r-t"` holds `a_r^t`; omitted entries are 1.
    #[serde(default)]
    pub scalars: BTreeMap<String, ComplexDoc>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassificationDoc {
    #[serde(default)]
    pub bonds: BTreeMap<String, BondSpecDoc>,
    #[serde(default)]
    pub chi: BTreeMap<String, ComplexDoc>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    /// Row-major matrices keyed by generator label.
    pub gens: BTreeMap<String, Vec<Vec<ComplexDoc>>>,
    /// Reflection vectors; standard basis vectors when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<BTreeMap<String, Vec<ComplexDoc>>>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub system: SystemDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum: Option<DatumDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationDoc>,
}

/// What an input document describes once parsed.
#[derive(Debug, Clone)]
pub enum Payload {
    Datum(IRDatum),
    Classification(Classification),
    Representation(Representation),
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub system: CoxeterSystem,
    pub payload: Payload,
}

impl Parsed {
    /// A datum for the payload: classifications go through the canonical
    /// datum, representations through extraction.
    pub fn to_datum(&self, tol: f64) -> Result<IRDatum> {
        match &self.payload {
            Payload::Datum(d) => Ok(d.clone()),
            Payload::Classification(c) => datum_from_classification(c),
            Payload::Representation(r) => crate::ir::extract_datum(r, &self.system, tol),
        }
    }
}

pub fn complex(c: ComplexDoc) -> Complex64 {
    Complex64::new(c[0], c[1])
}

pub fn complex_doc(z: Complex64) -> ComplexDoc {
    [z.re, z.im]
}

fn field_err(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{field}: {msg}"))
}

fn bond_value(v: &BondValue, field: &str) -> Result<BondOrder> {
    match v {
        BondValue::Finite(m) => Ok(BondOrder::Finite(*m)),
        BondValue::Named(s) if s == "inf" => Ok(BondOrder::Infinite),
        BondValue::Named(s) => Err(field_err(field, format!("expected an integer or \"inf\", got {s:?}"))),
    }
}

fn bond_value_doc(m: BondOrder) -> BondValue {
    match m {
        BondOrder::Finite(m) => BondValue::Finite(m),
        BondOrder::Infinite => BondValue::Named("inf".into()),
    }
}

/// Splits `"a-b"` into two known labels.
pub fn split_pair<'a>(key: &str, labels: &'a [String], field: &str) -> Result<(&'a str, &'a str)> {
    let mut found = Vec::new();
    for (pos, _) in key.match_indices('-') {
        let (a, b) = (&key[..pos], &key[pos + 1..]);
        if let (Some(la), Some(lb)) = (labels.iter().find(|l| *l == a), labels.iter().find(|l| *l == b)) {
            found.push((la.as_str(), lb.as_str()));
        }
    }
    match found.as_slice() {
        [one] => Ok(*one),
        [] => Err(field_err(field, format!("{key:?} is not of the form \"a-b\" with known generators"))),
        _ => Err(field_err(field, format!("{key:?} splits into generator labels in more than one way"))),
    }
}

fn pair_indices(key: &str, system: &CoxeterSystem, field: &str) -> Result<(usize, usize)> {
    let (a, b) = split_pair(key, system.labels(), field)?;
    let (i, j) = (system.index_of(a).unwrap(), system.index_of(b).unwrap());
    if i == j {
        return Err(field_err(field, format!("{key:?} pairs a generator with itself")));
    }
    Ok((i, j))
}

fn pair_key(system: &CoxeterSystem, i: usize, j: usize) -> String {
    format!("{}-{}", system.label(i), system.label(j))
}

pub fn parse_system(doc: &SystemDoc) -> Result<CoxeterSystem> {
    let mut bonds = Vec::new();
    for (key, v) in &doc.bonds {
        let field = format!("system.bonds.{key:?}");
        let (a, b) = split_pair(key, &doc.generators, &field)?;
        bonds.push((a.to_string(), b.to_string(), bond_value(v, &field)?));
    }
    let default_bond = doc.default_bond.as_ref().map(|v| bond_value(v, "system.default_bond")).transpose()?;
    CoxeterSystem::try_from(&SystemDescription { generators: doc.generators.clone(), bonds, default_bond })
}

pub fn system_doc(system: &CoxeterSystem) -> SystemDoc {
    SystemDoc {
        generators: system.labels().to_vec(),
        bonds: system.pairs().map(|(i, j)| (pair_key(system, i, j), bond_value_doc(system.bond(i, j)))).collect(),
        default_bond: None,
    }
}

/// Missing entries: `k = 1` on finite bonds, `z = 4` on infinite ones.
fn parse_bonds(docs: &BTreeMap<String, BondSpecDoc>, system: &CoxeterSystem, section: &str) -> Result<BondSpecs> {
    let mut bonds = BondSpecs::geometric(system.clone());
    let mut seen = std::collections::HashSet::new();
    for (key, doc) in docs {
        let field = format!("{section}.bonds.{key:?}");
        let (i, j) = pair_indices(key, system, &field)?;
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(field_err(&field, "pair given twice"));
        }
        let spec = match (doc.k, doc.z, &doc.absorb) {
            (Some(k), None, None) => match system.bond(i, j) {
                BondOrder::Finite(m) => DihedralRepSpec::RhoK { m, k },
                BondOrder::Infinite => return Err(field_err(&field, "\"k\" given for an infinite bond")),
            },
            (None, Some(z), None) => DihedralRepSpec::VarrhoZ { z: complex(z) },
            (None, None, Some(label)) => {
                let absorbing = if label == system.label(i) {
                    Absorbing::R
                } else if label == system.label(j) {
                    Absorbing::T
                } else {
                    return Err(field_err(&field, format!("absorbing generator {label:?} is not in the pair")));
                };
                DihedralRepSpec::VarrhoRT { absorbing }
            }
            _ => return Err(field_err(&field, "expected exactly one of \"k\", \"z\", \"absorb\"")),
        };
        bonds.set(i, j, spec).map_err(|e| field_err(&field, e))?;
    }
    Ok(bonds)
}

fn bonds_doc(bonds: &BondSpecs) -> BTreeMap<String, BondSpecDoc> {
    let system = bonds.system();
    system
        .pairs()
        .map(|(i, j)| {
            let doc = match bonds.spec(i, j) {
                DihedralRepSpec::RhoK { k, .. } => BondSpecDoc { k: Some(k), ..Default::default() },
                DihedralRepSpec::VarrhoZ { z } => BondSpecDoc { z: Some(complex_doc(z)), ..Default::default() },
                DihedralRepSpec::VarrhoRT { absorbing } => {
                    let l = if absorbing == Absorbing::R { i } else { j };
                    BondSpecDoc { absorb: Some(system.label(l).to_string()), ..Default::default() }
                }
                other => unreachable!("bond parameter {other:?} cannot occur in a datum"),
            };
            (pair_key(system, i, j), doc)
        })
        .collect()
}

pub fn parse_datum(doc: &DatumDoc, system: &CoxeterSystem) -> Result<IRDatum> {
    let bonds = parse_bonds(&doc.bonds, system, "datum")?;
    let n = system.rank();
    let mut scalars = vec![vec![ONE; n]; n];
    for (key, v) in &doc.scalars {
        let field = format!("datum.scalars.{key:?}");
        let (r, t) = pair_indices(key, system, &field)?;
        scalars[r][t] = complex(*v);
    }
    IRDatum::new(bonds, scalars).map_err(|e| field_err("datum.scalars", e))
}

pub fn datum_doc(datum: &IRDatum) -> DatumDoc {
    let system = datum.system();
    let n = system.rank();
    let mut scalars = BTreeMap::new();
    for r in 0..n {
        for t in (0..n).filter(|&t| t != r) {
            if datum.scalar(r, t) != ONE {
                scalars.insert(pair_key(system, r, t), complex_doc(datum.scalar(r, t)));
            }
        }
    }
    DatumDoc { bonds: bonds_doc(datum.bonds()), scalars }
}

pub fn parse_classification(doc: &ClassificationDoc, system: &CoxeterSystem) -> Result<Classification> {
    let bonds = parse_bonds(&doc.bonds, system, "classification")?;
    let tilde = bonds.tilde_system();
    let chords = tilde.basis.chords();
    let mut values: Vec<Option<Complex64>> = vec![None; chords.len()];
    for (key, v) in &doc.chi {
        let field = format!("classification.chi.{key:?}");
        let (a, b) = pair_indices(key, system, &field)?;
        let Some((idx, sign)) = tilde.basis.chord_index(a, b) else {
            return Err(field_err(&field, "not a chord of the reduced graph's circuit basis"));
        };
        if values[idx].is_some() {
            return Err(field_err(&field, "chord given twice"));
        }
        let x = complex(*v);
        values[idx] = Some(if sign > 0 { x } else { x.inv() });
    }
    let values: Vec<Complex64> = values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                let (a, b) = chords[i];
                field_err("classification.chi", format!("missing value for chord {:?}", pair_key(system, a, b)))
            })
        })
        .collect::<Result<_>>()?;
    let chi = Character::new(values).map_err(|e| field_err("classification.chi", e))?;
    Ok(Classification { bonds, chi })
}

pub fn classification_doc(c: &Classification) -> ClassificationDoc {
    let system = c.system();
    let tilde = c.bonds.tilde_system();
    let chi = tilde
        .basis
        .chords()
        .iter()
        .zip(c.chi.values())
        .map(|(&(a, b), &x)| (pair_key(system, a, b), complex_doc(x)))
        .collect();
    ClassificationDoc { bonds: bonds_doc(&c.bonds), chi }
}

fn matrix_from_rows(rows: &[Vec<ComplexDoc>], field: &str) -> Result<CMatrix> {
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(field_err(field, "matrix must be square"));
    }
    Ok(CMatrix::from_fn(n, n, |i, j| complex(rows[i][j])))
}

pub fn matrix_rows(m: &CMatrix) -> Vec<Vec<ComplexDoc>> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| complex_doc(m[(i, j)])).collect()).collect()
}

pub fn vector_doc(v: &CVector) -> Vec<ComplexDoc> {
    v.iter().map(|&z| complex_doc(z)).collect()
}

pub fn parse_representation(doc: &RepresentationDoc, system: &CoxeterSystem) -> Result<Representation> {
    let mut gens = Vec::new();
    let mut alpha = Vec::new();
    for key in doc.gens.keys().chain(doc.alpha.iter().flat_map(|a| a.keys())) {
        if system.index_of(key).is_none() {
            return Err(field_err("representation", format!("unknown generator {key:?}")));
        }
    }
    for label in system.labels() {
        let field = format!("representation.gens.{label:?}");
        let rows = doc.gens.get(label).ok_or_else(|| field_err(&field, "missing"))?;
        let g = matrix_from_rows(rows, &field)?;
        let n = g.nrows();
        let a = match doc.alpha.as_ref().and_then(|a| a.get(label)) {
            Some(v) => CVector::from_iterator(v.len(), v.iter().map(|&z| complex(z))),
            None => {
                let s = system.index_of(label).unwrap();
                CVector::from_fn(n, |k, _| if k == s { ONE } else { crate::linalg::ZERO })
            }
        };
        gens.push(g);
        alpha.push(a);
    }
    Representation::new(system.labels().to_vec(), gens, alpha).map_err(|e| field_err("representation", e))
}

pub fn representation_doc(rep: &Representation) -> RepresentationDoc {
    RepresentationDoc {
        gens: rep.labels().iter().zip(rep.gens()).map(|(l, g)| (l.clone(), matrix_rows(g))).collect(),
        alpha: Some(rep.labels().iter().zip(rep.alpha()).map(|(l, a)| (l.clone(), vector_doc(a))).collect()),
    }
}

pub fn parse_document(doc: &InputDocument) -> Result<Parsed> {
    let system = parse_system(&doc.system)?;
    let payload = match (&doc.datum, &doc.classification, &doc.representation) {
        (Some(d), None, None) => Payload::Datum(parse_datum(d, &system)?),
        (None, Some(c), None) => Payload::Classification(parse_classification(c, &system)?),
        (None, None, Some(r)) => Payload::Representation(parse_representation(r, &system)?),
        (None, None, None) => Payload::Datum(IRDatum::geometric(system.clone())),
        _ => return Err(Error::Parse("give at most one of \"datum\", \"classification\", \"representation\"".into())),
    };
    Ok(Parsed { system, payload })
}

pub fn parse_str(text: &str) -> Result<Parsed> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    parse_document(&doc)
}

pub fn datum_document(datum: &IRDatum) -> InputDocument {
    InputDocument { system: system_doc(datum.system()), datum: Some(datum_doc(datum)), ..Default::default() }
}

pub fn classification_document(c: &Classification) -> InputDocument {
    InputDocument { system: system_doc(c.system()), classification: Some(classification_doc(c)), ..Default::default() }
}

pub fn representation_document(system: &CoxeterSystem, rep: &Representation) -> InputDocument {
    InputDocument { system: system_doc(system), representation: Some(representation_doc(rep)), ..Default::default() }
}

pub fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("documents serialize")
}

pub fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn matrix_json(m: &CMatrix) -> Value {
    to_json(&matrix_rows(m))
}

pub fn vector_json(v: &CVector) -> Value {
    to_json(&vector_doc(v))
}
