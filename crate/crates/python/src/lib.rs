//! Python bindings: parameters, classes, the checkers, and the disk verifier.

use hyperstar::{
    self as hs, CertifyInputs, DiskGridSettings, Error, RadialSpacing, SeriesSettings, TheoremKind,
};
use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidC { .. }
        | Error::InvalidParams(_)
        | Error::InvalidSettings(_)
        | Error::PrecondFailed(_)
        | Error::RadiusExceeded { .. } => PyValueError::new_err(e.to_string()),
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn series(tol: Option<f64>, max_terms: Option<usize>, radius_cap: Option<f64>) -> SeriesSettings {
    let d = SeriesSettings::default();
    SeriesSettings {
        tol: tol.unwrap_or(d.tol),
        max_terms: max_terms.unwrap_or(d.max_terms),
        radius_cap: radius_cap.unwrap_or(d.radius_cap),
        ..d
    }
}

/// Parameter triple (a, b, c) of 2F1.
#[pyclass(name = "HypergeomParams", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyParams(hs::HypergeomParams);

#[pymethods]
impl PyParams {
    #[new]
    fn new(a: Complex64, b: Complex64, c: Complex64) -> PyResult<Self> {
        hs::HypergeomParams::new(a, b, c).map(Self).map_err(to_py)
    }

    /// The triple (a, b, a + b + 1).
    #[staticmethod]
    fn with_p_zero(a: Complex64, b: Complex64) -> PyResult<Self> {
        hs::HypergeomParams::with_p_zero(a, b).map(Self).map_err(to_py)
    }

    #[getter]
    fn a(&self) -> Complex64 {
        self.0.a()
    }

    #[getter]
    fn b(&self) -> Complex64 {
        self.0.b()
    }

    #[getter]
    fn c(&self) -> Complex64 {
        self.0.c()
    }

    /// p = a + b + 1 - c.
    #[getter]
    fn p(&self) -> Complex64 {
        self.0.p()
    }

    fn shifted(&self) -> Self {
        Self(self.0.shifted())
    }

    fn __repr__(&self) -> String {
        format!("HypergeomParams(a={}, b={}, c={})", self.0.a(), self.0.b(), self.0.c())
    }
}

/// One of the starlike-type classes.
#[pyclass(name = "ShapeClass", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyClass_(hs::ShapeClass);

#[pymethods]
impl PyClass_ {
    #[staticmethod]
    fn starlike(alpha: f64) -> PyResult<Self> {
        hs::ShapeClass::starlike(alpha).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn strongly_starlike(alpha: f64) -> PyResult<Self> {
        hs::ShapeClass::strongly_starlike(alpha).map(Self).map_err(to_py)
    }

    #[staticmethod]
    fn spirallike(lam: f64, alpha: f64) -> PyResult<Self> {
        hs::ShapeClass::spirallike(lam, alpha).map(Self).map_err(to_py)
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.0.alpha()
    }

    #[getter]
    fn label(&self) -> String {
        self.0.label()
    }

    fn __repr__(&self) -> String {
        format!("ShapeClass({})", self.0.label())
    }
}

/// Trace of one checker run.
#[pyclass(name = "Certificate", frozen, skip_from_py_object)]
struct PyCertificate(hs::Certificate);

#[pymethods]
impl PyCertificate {
    #[getter]
    fn passed(&self) -> bool {
        self.0.passed
    }

    #[getter]
    fn kind(&self) -> String {
        format!("{:?}", self.0.kind)
    }

    /// List of (name, value, threshold, pass).
    #[getter]
    fn conditions(&self) -> Vec<(String, String, String, bool)> {
        self.0
            .conditions
            .iter()
            .map(|c| (c.name.clone(), c.value.clone(), c.threshold.clone(), c.pass))
            .collect()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    fn first_failure(&self) -> Option<String> {
        self.0.first_failure().map(str::to_string)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("certificate serializes")
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyclass(name = "VerificationReport", frozen, skip_from_py_object)]
struct PyReport(hs::VerificationReport);

#[pymethods]
impl PyReport {
    /// "Consistent", "Violated" or "Degenerate".
    #[getter]
    fn status(&self) -> String {
        format!("{:?}", self.0.status)
    }

    #[getter]
    fn min_slack(&self) -> f64 {
        self.0.min_slack
    }

    #[getter]
    fn argmin_z(&self) -> Complex64 {
        self.0.argmin_z
    }

    #[getter]
    fn n_violations(&self) -> usize {
        self.0.n_violations
    }

    #[getter]
    fn n_f_zeros(&self) -> usize {
        self.0.n_f_zeros
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        format!("VerificationReport(status={:?}, min_slack={})", self.0.status, self.0.min_slack)
    }
}

#[pyfunction]
#[pyo3(signature = (params, z, tol=None, max_terms=None, radius_cap=None))]
fn gauss_2f1(
    params: &PyParams,
    z: Complex64,
    tol: Option<f64>,
    max_terms: Option<usize>,
    radius_cap: Option<f64>,
) -> PyResult<Complex64> {
    hs::gauss_2f1(&params.0, z, &series(tol, max_terms, radius_cap)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (params, z, tol=None, max_terms=None, radius_cap=None))]
fn gauss_2f1_derivative(
    params: &PyParams,
    z: Complex64,
    tol: Option<f64>,
    max_terms: Option<usize>,
    radius_cap: Option<f64>,
) -> PyResult<Complex64> {
    hs::gauss_2f1_derivative(&params.0, z, &series(tol, max_terms, radius_cap)).map_err(to_py)
}

/// q(z) = z f'(z) / f(z) for f(z) = z 2F1(a, b; c; z).
#[pyfunction]
#[pyo3(signature = (params, z, tol=None, max_terms=None, radius_cap=None))]
fn log_derivative_q(
    params: &PyParams,
    z: Complex64,
    tol: Option<f64>,
    max_terms: Option<usize>,
    radius_cap: Option<f64>,
) -> PyResult<Complex64> {
    hs::log_derivative_q(&params.0, z, &series(tol, max_terms, radius_cap)).map_err(to_py)
}

fn inputs(
    theorem: &str,
    a: Complex64,
    b: Complex64,
    c: Option<Complex64>,
    alpha: f64,
    lam: f64,
    s: f64,
    cls: Option<&PyClass_>,
) -> PyResult<(TheoremKind, CertifyInputs)> {
    let kind: TheoremKind = theorem.parse().map_err(to_py)?;
    let c = match c {
        Some(c) => c,
        None if kind.forces_p_zero() => a + b + 1.0,
        None => return Err(PyValueError::new_err(format!("theorem `{kind}` needs c"))),
    };
    let inputs = CertifyInputs {
        lambda: lam,
        s,
        class: cls.map(|k| k.0),
        ..CertifyInputs::new(a, b, c, alpha)
    };
    Ok((kind, inputs))
}

/// Runs one checker by its command-line name (e.g. "starlike-order").
#[pyfunction]
#[pyo3(signature = (theorem, a, b, c=None, alpha=0.0, lam=0.0, s=0.0, cls=None))]
#[allow(clippy::too_many_arguments)]
fn certify(
    theorem: &str,
    a: Complex64,
    b: Complex64,
    c: Option<Complex64>,
    alpha: f64,
    lam: f64,
    s: f64,
    cls: Option<PyRef<'_, PyClass_>>,
) -> PyResult<PyCertificate> {
    let (kind, inputs) = inputs(theorem, a, b, c, alpha, lam, s, cls.as_deref())?;
    run_certify(kind, &inputs)
}

fn run_certify(kind: TheoremKind, inputs: &CertifyInputs) -> PyResult<PyCertificate> {
    match hs::certify(kind, inputs) {
        Ok(cert) => Ok(PyCertificate(cert)),
        Err(Error::OracleInconclusive { certificate, .. }) => Ok(PyCertificate(*certificate)),
        Err(e) => Err(to_py(e)),
    }
}

fn grid(n_radii: usize, r_max: f64, n_angles: usize, geometric: bool) -> DiskGridSettings {
    DiskGridSettings {
        n_radii,
        r_max,
        n_angles,
        radial_spacing: if geometric { RadialSpacing::Geometric } else { RadialSpacing::Uniform },
        ..DiskGridSettings::default()
    }
}

#[pyfunction]
#[pyo3(signature = (cls, params, n_radii=40, r_max=0.995, n_angles=720, geometric=true))]
fn verify_on_disk(
    py: Python<'_>,
    cls: &PyClass_,
    params: &PyParams,
    n_radii: usize,
    r_max: f64,
    n_angles: usize,
    geometric: bool,
) -> PyResult<PyReport> {
    let (class, params) = (cls.0, params.0);
    let grid = grid(n_radii, r_max, n_angles, geometric);
    py.detach(|| hs::verify_on_disk(&class, &params, &grid, &SeriesSettings::default()))
        .map(PyReport)
        .map_err(to_py)
}

/// Certifies, verifies the claimed class on the disk, and returns
/// (certificate, report, verdict) with verdict "Sound", "Info" or "Unsound".
#[pyfunction]
#[pyo3(signature = (theorem, a, b, c=None, alpha=0.0, lam=0.0, s=0.0, cls=None, n_radii=40, n_angles=720))]
#[allow(clippy::too_many_arguments)]
fn cross_check(
    py: Python<'_>,
    theorem: &str,
    a: Complex64,
    b: Complex64,
    c: Option<Complex64>,
    alpha: f64,
    lam: f64,
    s: f64,
    cls: Option<PyRef<'_, PyClass_>>,
    n_radii: usize,
    n_angles: usize,
) -> PyResult<(PyCertificate, PyReport, String)> {
    let (kind, inputs) = inputs(theorem, a, b, c, alpha, lam, s, cls.as_deref())?;
    let cert = run_certify(kind, &inputs)?;
    let (class, params) = hs::verification_target(kind, &inputs).map_err(to_py)?;
    let grid = grid(n_radii, 0.995, n_angles, true);
    let report = py
        .detach(|| hs::verify_on_disk(&class, &params, &grid, &SeriesSettings::default()))
        .map_err(to_py)?;
    let result = hs::judge(cert.0.passed, report.clone());
    Ok((cert, PyReport(report), format!("{:?}", result.verdict)))
}

#[pymodule]
fn pyhyperstar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyParams>()?;
    m.add_class::<PyClass_>()?;
    m.add_class::<PyCertificate>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(gauss_2f1, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_2f1_derivative, m)?)?;
    m.add_function(wrap_pyfunction!(log_derivative_q, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_on_disk, m)?)?;
    m.add_function(wrap_pyfunction!(cross_check, m)?)?;
    Ok(())
}
