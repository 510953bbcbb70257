//! Command-line front end. Reports go to the given writer as JSON (CSV for
//! `sweep`); the returned code is 0 on success, 1 on a mathematical
//! negative and 2 on an input error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::affine::{affine_datum, det_formula, AffineAnSpec};
use crate::analysis::{
    bilinear_form, commutant_dim, direction_preorder, dual, fixed_subspace, matrix_a, sesquilinear_form, DualOutcome,
    FormObstruction, FormOutcome,
};
use crate::coxeter::BondOrder;
use crate::dihedral::{matrices, DihedralRepSpec};
use crate::error::{Error, Result};
use crate::hecke::{apply, cell_element, check_a1, A1Verdict};
use crate::io::{self, complex_json, matrix_json, vector_json, Parsed};
use crate::ir::{
    build, character_of, datum_from_classification, isomorphism, Classification, IRDatum, Isomorphism, NonIsoReason,
};
use crate::linalg::{max_abs, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "coxrep", version, about = "IR-representations of Coxeter groups")]
pub struct Cli {
    /// Threshold for rank and verdict decisions.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Bilinear,
    Sesquilinear,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build generator matrices from a datum or classification.
    Build { input: PathBuf },
    /// Matrix A, fixed subspace, commutant, reduced graph and character.
    Analyze { input: PathBuf },
    /// Decide isomorphism of two inputs over the same system.
    Isom { first: PathBuf, second: PathBuf },
    /// Invariant bilinear or sesquilinear form.
    Form {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Kind::Bilinear)]
        kind: Kind,
    },
    /// Dual representation (finite bonds only).
    Dual { input: PathBuf },
    /// Check relations, condition (IR), condition (A1) and the structural identities.
    Verify { input: PathBuf },
    /// Evaluate C_{w_rt} at q = 1 on rho_k of the dihedral group of order 2m.
    Cellcheck {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
    },
    /// The A~_n representation V_x.
    AffineAn {
        #[arg(long)]
        n: usize,
        /// A real number, `p/q`, or `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// CSV of det A and corank as one character value varies.
    Sweep {
        input: PathBuf,
        /// Chord key `a-b`.
        #[arg(long)]
        chord: String,
        /// One value per line, in the same syntax as `affine-an --x`.
        #[arg(long)]
        values_file: PathBuf,
    },
}

enum Failure {
    Input(Error),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self::Input(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e)
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        let _ = writeln!(err, "error: --tol must be positive");
        return EXIT_INPUT;
    }
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn read_input(path: &Path) -> Result<Parsed> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    io::parse_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, v: &Value) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, v)?;
    writeln!(out)
}

/// Parses `2`, `-1/3`, or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = || Error::Parse(format!("cannot read {s:?} as a number"));
    let real = |t: &str| -> Result<f64> {
        let t = t.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                Ok(p.trim().parse::<f64>().map_err(|_| bad())? / q.trim().parse::<f64>().map_err(|_| bad())?)
            }
            None => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    let z = match s.split_once(',') {
        Some((re, im)) => Complex64::new(real(re)?, real(im)?),
        None => Complex64::new(real(s)?, 0.0),
    };
    if z.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let tol = cli.tol;
    match &cli.command {
        Command::Build { input } => {
            let parsed = read_input(input)?;
            let datum = parsed.to_datum(tol)?;
            let rep = build(&datum);
            let report = json!({
                "datum": io::to_json(&io::datum_document(&datum)),
                "representation": io::to_json(&io::representation_doc(&rep)),
                "relation_residual": rep.relation_residual(datum.system()),
            });
            emit(out, &report)?;
            Ok(EXIT_OK)
        }
        Command::Analyze { input } => {
            let datum = read_input(input)?.to_datum(tol)?;
            emit(out, &analysis_report(&datum, tol))?;
            Ok(EXIT_OK)
        }
        Command::Isom { first, second } => {
            let d1 = read_input(first)?.to_datum(tol)?;
            let d2 = read_input(second)?.to_datum(tol)?;
            let labels = d1.system().labels().to_vec();
            let (report, code) = match isomorphism(&d1, &d2, tol)? {
                Isomorphism::Intertwiner { matrix, residual } => {
                    let ok = residual <= tol * max_abs(&matrix).max(1.0);
                    (
                        json!({"isomorphic": true, "intertwiner": matrix_json(&matrix), "residual": residual, "verified": ok}),
                        if ok { EXIT_OK } else { EXIT_NEGATIVE },
                    )
                }
                Isomorphism::NotIsomorphic(reason) => {
                    let reason = match reason {
                        NonIsoReason::BondsDiffer { pair } => {
                            json!({"bonds_differ": format!("{}-{}", labels[pair.0], labels[pair.1])})
                        }
                        NonIsoReason::CharacterDiffers { chord, left, right } => json!({
                            "character_differs": format!("{}-{}", labels[chord.0], labels[chord.1]),
                            "first": complex_json(left),
                            "second": complex_json(right),
                        }),
                    };
                    (json!({"isomorphic": false, "reason": reason}), EXIT_NEGATIVE)
                }
            };
            emit(out, &report)?;
            Ok(code)
        }
        Command::Form { input, kind } => {
            let datum = read_input(input)?.to_datum(tol)?;
            let outcome = match kind {
                Kind::Bilinear => bilinear_form(&datum, tol),
                Kind::Sesquilinear => sesquilinear_form(&datum, tol),
            };
            let labels = datum.system().labels();
            let (report, code) = match outcome {
                FormOutcome::Exists(f) => (
                    json!({
                        "exists": true,
                        "gram": matrix_json(&f.gram),
                        "residual": f.residual,
                        "solution_dim": f.solution_dim,
                    }),
                    EXIT_OK,
                ),
                FormOutcome::NoneExists(why) => {
                    let reason = match why {
                        FormObstruction::CharacterValue { chord, value } => json!({
                            "character_value": complex_json(value),
                            "chord": format!("{}-{}", labels[chord.0], labels[chord.1]),
                        }),
                        FormObstruction::NonRealBondProduct { pair } => {
                            json!({"non_real_bond_product": format!("{}-{}", labels[pair.0], labels[pair.1])})
                        }
                        FormObstruction::OnlyZeroSolution => json!("only the zero form is invariant"),
                    };
                    (json!({"exists": false, "reason": reason}), EXIT_NEGATIVE)
                }
            };
            emit(out, &report)?;
            Ok(code)
        }
        Command::Dual { input } => {
            let datum = read_input(input)?.to_datum(tol)?;
            let r = dual(&datum, tol)?;
            let outcome = match &r.outcome {
                DualOutcome::Invertible { dual_datum, dual_classification, basis_residual, chi_error } => json!({
                    "invertible": true,
                    "dual_datum": io::to_json(&io::datum_doc(dual_datum)),
                    "dual_classification": io::to_json(&io::classification_doc(dual_classification)),
                    "basis_residual": basis_residual,
                    "chi_error": chi_error,
                }),
                DualOutcome::Singular { rank, sub_dim, trivial_quotient_dim, stability_residual } => json!({
                    "invertible": false,
                    "rank": rank,
                    "sub_dim": sub_dim,
                    "trivial_quotient_dim": trivial_quotient_dim,
                    "stability_residual": stability_residual,
                }),
            };
            let report = json!({
                "transition": matrix_json(&r.transition),
                "eigen_residual": r.eigen_residual,
                "dual_gens": r.dual_gens.iter().map(matrix_json).collect::<Vec<_>>(),
                "outcome": outcome,
            });
            emit(out, &report)?;
            Ok(EXIT_OK)
        }
        Command::Verify { input } => {
            let parsed = read_input(input)?;
            let datum = parsed.to_datum(tol)?;
            let (report, pass) = verify_report(&datum, tol);
            emit(out, &report)?;
            Ok(if pass { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Cellcheck { m, k } => {
            let spec = DihedralRepSpec::RhoK { m: *m, k: *k };
            let (r, t) = matrices(&spec)?.as_matrices();
            let elem = cell_element(BondOrder::Finite(*m), (0, 1))?;
            let value = apply(&elem, &r, &t, tol)?;
            let eps = crate::linalg::identity(1) * crate::linalg::real(-1.0);
            let eps_value = apply(&elem, &eps, &eps, tol)?[(0, 0)];
            let residual = max_abs(&value);
            let pass = residual < tol;
            let labels = vec!["r".to_string(), "t".to_string()];
            let report = json!({
                "element": elem.render(&labels),
                "terms": elem.terms.len(),
                "max_residual": residual,
                "epsilon_value": complex_json(eps_value),
                "verdict": if pass { "pass" } else { "fail" },
            });
            emit(out, &report)?;
            Ok(if pass { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::AffineAn { n, x } => {
            let spec = AffineAnSpec::new(*n, parse_complex(x)?)?;
            let datum = affine_datum(&spec);
            let mut report = analysis_report(&datum, tol);
            report["det_formula"] = complex_json(det_formula(&spec));
            report["datum"] = io::to_json(&io::datum_document(&datum));
            emit(out, &report)?;
            Ok(EXIT_OK)
        }
        Command::Sweep { input, chord, values_file } => {
            let parsed = read_input(input)?;
            let base = match &parsed.payload {
                io::Payload::Classification(c) => c.clone(),
                _ => character_of(&parsed.to_datum(tol)?),
            };
            let (a, b) = io::split_pair(chord, parsed.system.labels(), "--chord")?;
            let (a, b) = (parsed.system.index_of(a).unwrap(), parsed.system.index_of(b).unwrap());
            let tilde = base.bonds.tilde_system();
            let (idx, sign) = tilde
                .basis
                .chord_index(a, b)
                .ok_or_else(|| Error::Parse(format!("--chord: {chord:?} is not a chord of the reduced graph")))?;
            let text = std::fs::read_to_string(values_file)
                .map_err(|e| Error::Parse(format!("{}: {e}", values_file.display())))?;
            let values: Vec<Complex64> = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
                .map(|(i, l)| {
                    parse_complex(l).map_err(|e| Error::Parse(format!("{}:{}: {e}", values_file.display(), i + 1)))
                })
                .collect::<Result<_>>()?;
            let rows: Vec<Result<String>> = values.par_iter().map(|&x| sweep_row(&base, idx, sign, x, tol)).collect();
            writeln!(out, "chi_re,chi_im,det_re,det_im,corank")?;
            for row in rows {
                writeln!(out, "{}", row?)?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn sweep_row(base: &Classification, idx: usize, sign: i32, x: Complex64, tol: f64) -> Result<String> {
    let mut values = base.chi.values().to_vec();
    values[idx] = if sign > 0 { x } else { x.inv() };
    let c = Classification { bonds: base.bonds.clone(), chi: crate::graph::Character::new(values)? };
    let a = matrix_a(&datum_from_classification(&c)?);
    let det = a.det();
    Ok(format!("{},{},{},{},{}", x.re, x.im, det.re, det.im, a.corank(tol)))
}

/// Matrix `A`, fixed vectors, commutant, reduced graph, character and pre-order.
pub fn analysis_report(datum: &IRDatum, tol: f64) -> Value {
    let system = datum.system();
    let labels = system.labels();
    let rep = build(datum);
    let a = matrix_a(datum);
    let tilde = datum.tilde_system();
    let fixed = fixed_subspace(&rep, tol);
    let pre = direction_preorder(datum);
    let name = |v: &[usize]| v.iter().map(|&i| labels[i].clone()).collect::<Vec<_>>();
    let tilde_bonds: serde_json::Map<String, Value> = system
        .pairs()
        .map(|(i, j)| (format!("{}-{}", labels[i], labels[j]), io::to_json(&tilde_bond_json(tilde.tilde_bond[i][j]))))
        .collect();
    json!({
        "matrix_a": matrix_json(&a.entries),
        "det": complex_json(a.det()),
        "corank": a.corank(tol),
        "fixed_subspace": fixed.iter().map(vector_json).collect::<Vec<_>>(),
        "commutant_dim": commutant_dim(&rep, tol),
        "tilde_bonds": tilde_bonds,
        "tilde_components": tilde.component_count(),
        "classification": io::to_json(&io::classification_doc(&character_of(datum))),
        "direction": {
            "arrows": pre.arrows.iter().map(|&(x, y)| format!("{}->{}", labels[x], labels[y])).collect::<Vec<_>>(),
            "classes": pre.classes.iter().map(|c| name(c)).collect::<Vec<_>>(),
            "sub_representations": pre.spans.iter().map(|s| json!({
                "class": name(&pre.classes[s.class]),
                "span": name(&s.down_set),
                "stability_residual": s.stability_residual,
            })).collect::<Vec<_>>(),
        },
    })
}

fn tilde_bond_json(m: BondOrder) -> io::BondValue {
    match m {
        BondOrder::Finite(m) => io::BondValue::Finite(m),
        BondOrder::Infinite => io::BondValue::Named("inf".into()),
    }
}

/// Every structural check that applies to a datum; `true` when all pass.
pub fn verify_report(datum: &IRDatum, tol: f64) -> (Value, bool) {
    let system = datum.system();
    let rep = build(datum);
    let relation_residual = rep.relation_residual(system);
    let relations_ok = relation_residual < tol.max(1e-8);
    let ir_ok = rep.check_ir(tol).is_ok();
    let a1 = check_a1(&rep, system, tol);
    let corank = matrix_a(datum).corank(tol);
    let fixed = fixed_subspace(&rep, tol).len();
    let tilde = datum.tilde_system();
    let commutant = commutant_dim(&rep, tol);
    let round_trip = datum_from_classification(&character_of(datum))
        .and_then(|back| isomorphism(datum, &back, tol))
        .map(|iso| matches!(iso, Isomorphism::Intertwiner { residual, matrix } if residual <= tol * max_abs(&matrix).max(1.0)))
        .unwrap_or(false);
    let checks = [
        ("relations", relations_ok),
        ("condition_ir", ir_ok),
        ("condition_a1", a1 == A1Verdict::Pass),
        ("corank_equals_fixed_dim", corank == fixed),
        ("commutant_equals_components", commutant == tilde.component_count()),
        ("classification_round_trip", round_trip),
    ];
    let pass = checks.iter().all(|(_, ok)| *ok);
    let report = json!({
        "relation_residual": relation_residual,
        "corank": corank,
        "fixed_dim": fixed,
        "commutant_dim": commutant,
        "tilde_components": tilde.component_count(),
        "checks": checks.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "verdict": if pass { "pass" } else { "fail" },
    });
    (report, pass)
}
