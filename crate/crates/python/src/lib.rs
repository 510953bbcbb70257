//! Python bindings for `coxrep`.

use coxrep::affine::{affine_datum, affine_system, det_formula, AffineAnSpec};
use coxrep::analysis::{self, bilinear_form, dual, sesquilinear_form, DualOutcome, FormOutcome};
use coxrep::cli::{analysis_report, verify_report};
use coxrep::dihedral::{matrices, DihedralRepSpec};
use coxrep::hecke::{apply, cell_element};
use coxrep::io::{self, Payload};
use coxrep::linalg::{max_abs, CMatrix, CVector, DEFAULT_TOL};
use coxrep::{build, character_of, isomorphism, BondOrder, Error, IRDatum, Isomorphism};
use num_complex::Complex64;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rows(m: &CMatrix) -> Vec<Vec<Complex64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

fn entries(v: &CVector) -> Vec<Complex64> {
    v.iter().copied().collect()
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    Ok(py.import("json")?.call_method1("loads", (v.to_string(),))?.unbind())
}

fn dumps(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    if let Ok(s) = obj.extract::<String>() {
        return Ok(s);
    }
    if obj.is_instance_of::<PyDict>() {
        return obj.py().import("json")?.call_method1("dumps", (obj,))?.extract();
    }
    Err(PyTypeError::new_err("expected a JSON string or a dict"))
}

/// A Coxeter system with labelled generators.
#[pyclass(name = "CoxeterSystem", module = "coxrep_py", frozen)]
struct PyCoxeterSystem {
    inner: coxrep::CoxeterSystem,
}

#[pymethods]
impl PyCoxeterSystem {
    /// `generators` in order, `bonds` keyed `"a-b"` with an integer or `"inf"`.
    #[new]
    #[pyo3(signature = (generators, bonds=None, default_bond=None))]
    fn new(
        py: Python<'_>,
        generators: Vec<String>,
        bonds: Option<Bound<'_, PyDict>>,
        default_bond: Option<Bound<'_, PyAny>>,
    ) -> PyResult<Self> {
        let doc = PyDict::new(py);
        doc.set_item("generators", generators)?;
        if let Some(b) = bonds {
            doc.set_item("bonds", b)?;
        }
        if let Some(d) = default_bond {
            doc.set_item("default_bond", d)?;
        }
        let text = dumps(doc.as_any())?;
        let parsed: io::SystemDoc = serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Self { inner: io::parse_system(&parsed).map_err(err)? })
    }

    /// The cycle `s0 - s1 - ... - sn - s0` with all bonds 3.
    #[staticmethod]
    fn affine_a(n: usize) -> PyResult<Self> {
        Ok(Self { inner: affine_system(n).map_err(err)? })
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    /// Bond order between two labels; `None` for an infinite bond.
    fn bond(&self, a: &str, b: &str) -> PyResult<Option<u32>> {
        let (i, j) = (self.index(a)?, self.index(b)?);
        Ok(match self.inner.bond(i, j) {
            BondOrder::Finite(m) => Some(m),
            BondOrder::Infinite => None,
        })
    }

    fn __repr__(&self) -> String {
        format!("CoxeterSystem({:?})", self.inner.labels())
    }
}

impl PyCoxeterSystem {
    fn index(&self, label: &str) -> PyResult<usize> {
        self.inner.index_of(label).ok_or_else(|| PyValueError::new_err(format!("unknown generator {label:?}")))
    }
}

/// An IR-datum: bond parameters and scalars on a Coxeter system.
#[pyclass(name = "Datum", module = "coxrep_py", frozen)]
struct PyDatum {
    inner: IRDatum,
}

#[pymethods]
impl PyDatum {
    /// Reads a document (string or dict) holding a datum, a classification
    /// or a representation.
    #[staticmethod]
    #[pyo3(signature = (doc, tol=DEFAULT_TOL))]
    fn parse(doc: &Bound<'_, PyAny>, tol: f64) -> PyResult<Self> {
        let parsed = io::parse_str(&dumps(doc)?).map_err(err)?;
        Ok(Self { inner: parsed.to_datum(tol).map_err(err)? })
    }

    /// Every bond `rho_1` (or `varrho_4` when infinite), every scalar 1.
    #[staticmethod]
    fn geometric(system: &PyCoxeterSystem) -> Self {
        Self { inner: IRDatum::geometric(system.inner.clone()) }
    }

    /// The member `V_x` of the `A~_n` family.
    #[staticmethod]
    fn affine_a(n: usize, x: Complex64) -> PyResult<Self> {
        Ok(Self { inner: affine_datum(&AffineAnSpec::new(n, x).map_err(err)?) })
    }

    /// Same datum with `a_r^t` replaced.
    fn with_scalar(&self, r: &str, t: &str, value: Complex64) -> PyResult<Self> {
        let (i, j) = (self.index(r)?, self.index(t)?);
        Ok(Self { inner: self.inner.clone().with_scalar(i, j, value).map_err(err)? })
    }

    /// Same datum with `rho_k` on a finite bond.
    fn with_rho(&self, r: &str, t: &str, k: u32) -> PyResult<Self> {
        let (i, j) = (self.index(r)?, self.index(t)?);
        let m = self.inner.system().bond(i, j).finite().ok_or_else(|| PyValueError::new_err("bond is infinite"))?;
        Ok(Self { inner: self.inner.clone().with_bond(i, j, DihedralRepSpec::RhoK { m, k }).map_err(err)? })
    }

    #[getter]
    fn system(&self) -> PyCoxeterSystem {
        PyCoxeterSystem { inner: self.inner.system().clone() }
    }

    fn scalar(&self, r: &str, t: &str) -> PyResult<Complex64> {
        Ok(self.inner.scalar(self.index(r)?, self.index(t)?))
    }

    /// Generator matrices in label order.
    fn generators(&self) -> Vec<Vec<Vec<Complex64>>> {
        build(&self.inner).gens().iter().map(rows).collect()
    }

    /// Images of the basis vectors `alpha_s`.
    fn alpha(&self) -> Vec<Vec<Complex64>> {
        build(&self.inner).alpha().iter().map(entries).collect()
    }

    fn relation_residual(&self) -> f64 {
        build(&self.inner).relation_residual(self.inner.system())
    }

    fn matrix_a(&self) -> Vec<Vec<Complex64>> {
        rows(&analysis::matrix_a(&self.inner).entries)
    }

    fn det_a(&self) -> Complex64 {
        analysis::det_a(&self.inner)
    }

    #[pyo3(signature = (tol=DEFAULT_TOL))]
    fn corank_a(&self, tol: f64) -> usize {
        analysis::corank_a(&self.inner, tol)
    }

    #[pyo3(signature = (tol=DEFAULT_TOL))]
    fn fixed_subspace(&self, tol: f64) -> Vec<Vec<Complex64>> {
        analysis::fixed_subspace(&build(&self.inner), tol).iter().map(entries).collect()
    }

    #[pyo3(signature = (tol=DEFAULT_TOL))]
    fn commutant_dim(&self, tol: f64) -> usize {
        analysis::commutant_dim(&build(&self.inner), tol)
    }

    /// Character values keyed by chord `"a-b"`.
    fn character(&self) -> Vec<(String, Complex64)> {
        let labels = self.inner.system().labels();
        let c = character_of(&self.inner);
        let tilde = c.bonds.tilde_system();
        tilde
            .basis
            .chords()
            .iter()
            .zip(c.chi.values())
            .map(|(&(a, b), &v)| (format!("{}-{}", labels[a], labels[b]), v))
            .collect()
    }

    /// Gram matrix of an invariant form, or `None` when only zero is invariant.
    #[pyo3(signature = (kind="bilinear", tol=DEFAULT_TOL))]
    fn invariant_form(&self, kind: &str, tol: f64) -> PyResult<Option<Vec<Vec<Complex64>>>> {
        let outcome = match kind {
            "bilinear" => bilinear_form(&self.inner, tol),
            "sesquilinear" => sesquilinear_form(&self.inner, tol),
            other => return Err(PyValueError::new_err(format!("unknown form kind {other:?}"))),
        };
        Ok(match outcome {
            FormOutcome::Exists(f) => Some(rows(&f.gram)),
            FormOutcome::NoneExists(_) => None,
        })
    }

    /// The contragredient: its datum when `A` is invertible, otherwise `None`.
    #[pyo3(signature = (tol=DEFAULT_TOL))]
    fn dual(&self, tol: f64) -> PyResult<Option<Self>> {
        Ok(match dual(&self.inner, tol).map_err(err)?.outcome {
            DualOutcome::Invertible { dual_datum, .. } => Some(Self { inner: dual_datum }),
            DualOutcome::Singular { .. } => None,
        })
    }

    /// The `analyze` report as a dict.
    #[pyo3(signature = (tol=DEFAULT_TOL))]
    fn analyze(&self, py: Python<'_>, tol: f64) -> PyResult<Py<PyAny>> {
        to_py(py, &analysis_report(&self.inner, tol))
    }

    /// The `verify` report and its overall verdict.
    #[pyo3(signature = (tol=DEFAULT_TOL))]
    fn verify(&self, py: Python<'_>, tol: f64) -> PyResult<(Py<PyAny>, bool)> {
        let (report, pass) = verify_report(&self.inner, tol);
        Ok((to_py(py, &report)?, pass))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&io::datum_document(&self.inner)).expect("documents serialize")
    }

    fn __repr__(&self) -> String {
        format!("Datum({:?})", self.inner.system().labels())
    }
}

impl PyDatum {
    fn index(&self, label: &str) -> PyResult<usize> {
        self.inner.system().index_of(label).ok_or_else(|| PyValueError::new_err(format!("unknown generator {label:?}")))
    }
}

/// Intertwiner between the two representations, or `None` if they are not
/// isomorphic.
#[pyfunction]
#[pyo3(signature = (first, second, tol=DEFAULT_TOL))]
fn intertwiner(first: &PyDatum, second: &PyDatum, tol: f64) -> PyResult<Option<Vec<Vec<Complex64>>>> {
    Ok(match isomorphism(&first.inner, &second.inner, tol).map_err(err)? {
        Isomorphism::Intertwiner { matrix, .. } => Some(rows(&matrix)),
        Isomorphism::NotIsomorphic(_) => None,
    })
}

/// The cell element of `D_m` as text and its largest entry on `rho_k`.
#[pyfunction]
#[pyo3(signature = (m, k, tol=DEFAULT_TOL))]
fn cell_check(m: u32, k: u32, tol: f64) -> PyResult<(String, f64)> {
    let (r, t) = matrices(&DihedralRepSpec::RhoK { m, k }).map_err(err)?.as_matrices();
    let elem = cell_element(BondOrder::Finite(m), (0, 1)).map_err(err)?;
    let value = apply(&elem, &r, &t, tol).map_err(err)?;
    Ok((elem.render(&["r".into(), "t".into()]), max_abs(&value)))
}

/// `(2 - x - 1/x) / 2^(n+1)`.
#[pyfunction]
fn affine_det_formula(n: usize, x: Complex64) -> PyResult<Complex64> {
    Ok(det_formula(&AffineAnSpec::new(n, x).map_err(err)?))
}

/// Kind of payload a document carries: `"datum"`, `"classification"` or
/// `"representation"`.
#[pyfunction]
fn payload_kind(doc: &Bound<'_, PyAny>) -> PyResult<&'static str> {
    Ok(match io::parse_str(&dumps(doc)?).map_err(err)?.payload {
        Payload::Datum(_) => "datum",
        Payload::Classification(_) => "classification",
        Payload::Representation(_) => "representation",
    })
}

#[pymodule]
fn coxrep_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCoxeterSystem>()?;
    m.add_class::<PyDatum>()?;
    m.add_function(wrap_pyfunction!(intertwiner, m)?)?;
    m.add_function(wrap_pyfunction!(cell_check, m)?)?;
    m.add_function(wrap_pyfunction!(affine_det_formula, m)?)?;
    m.add_function(wrap_pyfunction!(payload_kind, m)?)?;
    m.add("DEFAULT_TOL", DEFAULT_TOL)?;
    Ok(())
}
