//! Python bindings: `import ameforge`.
//!
//! Reports that are JSON on the Rust side (search reports, certificates,
//! verifier output) are returned as plain dicts and lists.

use ameforge_core::ame::{self, all_pass, DENSE_TOLERANCE};
use ameforge_core::search::{self, SearchOptions, DEFAULT_BUDGET};
use ameforge_core::{bounds, certificate, field, linear, Error};
use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(ameforge, AmeforgeError, PyException);
create_exception!(ameforge, BudgetExceededError, AmeforgeError);

fn to_py(err: Error) -> PyErr {
    match err {
        Error::BudgetExceeded(_) => BudgetExceededError::new_err(err.to_string()),
        _ => AmeforgeError::new_err(err.to_string()),
    }
}

trait IntoPyResult<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> IntoPyResult<T> for ameforge_core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

/// Converts any serializable report into Python objects via `json.loads`.
fn to_python<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| AmeforgeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "FiniteField", module = "ameforge", skip_from_py_object)]
#[derive(Clone)]
struct PyField(field::FiniteField);

impl PyField {
    fn check(&self, a: u32) -> PyResult<u32> {
        self.0.element(a as u64).map(|e| e.value()).py()
    }
}

#[pymethods]
impl PyField {
    #[new]
    fn new(q: u64) -> PyResult<Self> {
        field::FiniteField::new(q).map(PyField).py()
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.0.characteristic()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.0.degree()
    }

    /// Coefficients of the defining polynomial, constant term first.
    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.0.modulus().to_vec()
    }

    fn add(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.0.add(self.check(a)?, self.check(b)?))
    }

    fn sub(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.0.sub(self.check(a)?, self.check(b)?))
    }

    fn mul(&self, a: u32, b: u32) -> PyResult<u32> {
        Ok(self.0.mul(self.check(a)?, self.check(b)?))
    }

    fn neg(&self, a: u32) -> PyResult<u32> {
        Ok(self.0.neg(self.check(a)?))
    }

    fn inv(&self, a: u32) -> PyResult<u32> {
        self.0.inv(self.check(a)?).ok_or_else(|| to_py(Error::DivisionByZero))
    }

    fn div(&self, a: u32, b: u32) -> PyResult<u32> {
        self.0
            .div(self.check(a)?, self.check(b)?)
            .ok_or_else(|| to_py(Error::DivisionByZero))
    }

    fn pow(&self, a: u32, exp: u64) -> PyResult<u32> {
        Ok(self.0.pow(self.check(a)?, exp))
    }

    fn __repr__(&self) -> String {
        format!("FiniteField({})", self.0.order())
    }
}

#[pyclass(name = "Code", module = "ameforge", skip_from_py_object)]
#[derive(Clone)]
struct PyCode(ameforge_core::Code);

#[pymethods]
impl PyCode {
    #[new]
    fn new(n: usize, d: u32, words: Vec<Vec<u32>>) -> PyResult<Self> {
        ameforge_core::Code::new(n, d, words.into_iter().map(ameforge_core::Word::new))
            .map(PyCode)
            .py()
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        ameforge_core::Code::from_text(text).map(PyCode).py()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn d(&self) -> u32 {
        self.0.alphabet()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn words(&self) -> Vec<Vec<u32>> {
        self.0.words().iter().map(|w| w.symbols().to_vec()).collect()
    }

    fn min_distance(&self) -> PyResult<usize> {
        self.0.min_distance().py()
    }

    fn mds_verdict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_python(py, &self.0.mds_verdict().py()?)
    }

    fn oa_strength(&self, t: usize) -> PyResult<bool> {
        self.0.oa_strength_check(t).py()
    }

    /// Returns the punctured code and whether the word count was preserved.
    fn puncture(&self, i: usize) -> PyResult<(PyCode, bool)> {
        self.0.puncture(i).map(|(c, kept)| (PyCode(c), kept)).py()
    }

    fn shorten(&self, i: usize, symbol: u32) -> PyResult<PyCode> {
        self.0.shorten(i, symbol).map(PyCode).py()
    }

    fn __repr__(&self) -> String {
        format!("Code(n={}, d={}, words={})", self.0.n(), self.0.alphabet(), self.0.len())
    }
}

#[pyclass(name = "LinearCode", module = "ameforge", skip_from_py_object)]
#[derive(Clone)]
struct PyLinearCode(linear::LinearCode);

#[pymethods]
impl PyLinearCode {
    #[new]
    fn new(q: u64, generator: Vec<Vec<u32>>) -> PyResult<Self> {
        let f = field::FiniteField::new(q).py()?;
        linear::LinearCode::new(f, generator).map(PyLinearCode).py()
    }

    /// `[I_k | P]` over GF(q).
    #[staticmethod]
    fn from_parity_block(q: u64, parity: Vec<Vec<u32>>) -> PyResult<Self> {
        let f = field::FiniteField::new(q).py()?;
        linear::LinearCode::from_parity_block(f, &parity).map(PyLinearCode).py()
    }

    /// Doubly extended Reed–Solomon code over GF(q), truncated to length
    /// `n` (default `q + 1`).
    #[staticmethod]
    #[pyo3(signature = (q, k, n=None))]
    fn extended_rs(q: u64, k: usize, n: Option<usize>) -> PyResult<Self> {
        let f = field::FiniteField::new(q).py()?;
        let n = n.unwrap_or(q as usize + 1);
        linear::extended_grs_truncated(&f, n, k).map(PyLinearCode).py()
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.field().order()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k()
    }

    #[getter]
    fn generator(&self) -> Vec<Vec<u32>> {
        self.0.generator().clone()
    }

    fn is_mds(&self) -> bool {
        self.0.is_mds()
    }

    fn min_weight(&self) -> PyResult<usize> {
        self.0.min_weight().py()
    }

    fn codewords(&self) -> PyResult<PyCode> {
        self.0.codewords().map(PyCode).py()
    }

    fn systematize(&self) -> PyLinearCode {
        PyLinearCode(self.0.systematize())
    }

    fn parity_block(&self) -> Option<Vec<Vec<u32>>> {
        self.0.parity_block()
    }

    fn puncture(&self, i: usize) -> PyResult<PyLinearCode> {
        self.0.puncture(i).map(PyLinearCode).py()
    }

    fn __repr__(&self) -> String {
        format!("LinearCode(q={}, n={}, k={})", self.0.field().order(), self.0.n(), self.0.k())
    }
}

#[pyclass(name = "AmeState", module = "ameforge", skip_from_py_object)]
#[derive(Clone)]
struct PyAmeState(ame::AmeState);

#[pymethods]
impl PyAmeState {
    /// Uniform superposition over the words of an MDS code of minimal-support size.
    #[staticmethod]
    fn from_code(code: &PyCode) -> PyResult<Self> {
        ame::state_from_code(&code.0).map(PyAmeState).py()
    }

    #[new]
    fn new(n: usize, d: u32, kets: Vec<(Vec<u32>, Complex64)>) -> PyResult<Self> {
        ame::AmeState::new(n, d, kets.into_iter().map(|(w, a)| (ameforge_core::Word::new(w), a)))
            .map(PyAmeState)
            .py()
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        ame::AmeState::from_text(text).map(PyAmeState).py()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn d(&self) -> u32 {
        self.0.d()
    }

    fn support_size(&self) -> usize {
        self.0.support_size()
    }

    fn is_minimal_support(&self) -> bool {
        self.0.is_minimal_support()
    }

    fn kets(&self) -> Vec<(Vec<u32>, Complex64)> {
        self.0
            .kets()
            .iter()
            .map(|(w, a)| (w.symbols().to_vec(), *a))
            .collect()
    }

    fn with_phases(&self, phases: Vec<f64>) -> PyResult<PyAmeState> {
        self.0.with_phases(&phases).map(PyAmeState).py()
    }

    /// Runs the requested verifiers (`"combinatorial"`, `"dense"` or
    /// `"both"`) and returns `{"pass": bool, "<mode>": [reports]}`.
    #[pyo3(signature = (mode="both"))]
    fn verify<'py>(&self, py: Python<'py>, mode: &str) -> PyResult<Bound<'py, PyAny>> {
        let (comb, dense) = match mode {
            "combinatorial" => (true, false),
            "dense" => (false, true),
            "both" => (true, true),
            other => return Err(AmeforgeError::new_err(format!("unknown mode {other:?}"))),
        };
        let mut out = serde_json::Map::new();
        let mut pass = true;
        if comb {
            let r = ame::verify_uniform_combinatorial(&self.0).py()?;
            pass &= all_pass(&r);
            out.insert("combinatorial".into(), serde_json::json!(r));
        }
        if dense {
            let r = ame::verify_uniform_dense(&self.0, DENSE_TOLERANCE).py()?;
            pass &= all_pass(&r);
            out.insert("dense".into(), serde_json::json!(r));
        }
        out.insert("pass".into(), pass.into());
        to_python(py, &out)
    }

    /// Reduced density matrix on the sites `subset`, as nested lists.
    fn reduced_density(&self, subset: Vec<usize>) -> PyResult<Vec<Vec<Complex64>>> {
        let rho = ame::reduced_density(&self.0, &subset).py()?;
        Ok(rho.rows().map(<[Complex64]>::to_vec).collect())
    }

    /// AME(n, d) -> AME(n - 1, d).
    fn reduce(&self) -> PyResult<PyAmeState> {
        ame::reduce_ame(&self.0).map(PyAmeState).py()
    }

    fn __repr__(&self) -> String {
        format!("AmeState(n={}, d={}, kets={})", self.0.n(), self.0.d(), self.0.support_size())
    }
}

#[pyfunction]
#[pyo3(signature = (q, n, k, *, budget=None, workers=1, pruning=true, normalize=false,
                    all_information_sets=false, stop_at_first=false))]
#[allow(clippy::too_many_arguments)]
fn search_systematic_mds<'py>(
    py: Python<'py>,
    q: u32,
    n: usize,
    k: usize,
    budget: Option<u64>,
    workers: usize,
    pruning: bool,
    normalize: bool,
    all_information_sets: bool,
    stop_at_first: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let opts = SearchOptions {
        budget: budget.unwrap_or(DEFAULT_BUDGET),
        workers,
        pruning,
        normalize,
        all_information_sets,
        stop_at_first,
        ..SearchOptions::default()
    };
    let report = py.detach(|| search::search_systematic_mds(q, n, k, &opts)).py()?;
    to_python(py, &report)
}

#[pyfunction]
#[pyo3(signature = (q, n_cap=None, *, budget=None, workers=1))]
fn max_length_dim3(py: Python<'_>, q: u32, n_cap: Option<usize>, budget: Option<u64>, workers: usize) -> PyResult<usize> {
    let n_cap = n_cap.unwrap_or(q as usize + 2);
    py.detach(|| search::max_length_dim3(q, n_cap, budget.unwrap_or(DEFAULT_BUDGET), workers))
        .py()
}

/// `(allowed, explanation)` for the necessary condition on `(n, d)`.
#[pyfunction]
fn necessary_condition(n: usize, d: usize) -> (bool, String) {
    let v = bounds::necessary_condition(n, d);
    (v.allowed, v.explanation)
}

#[pyfunction]
fn bounds_table(py: Python<'_>, d_max: usize) -> PyResult<Bound<'_, PyAny>> {
    to_python(py, &bounds::bounds_table(d_max))
}

#[pyfunction]
#[pyo3(signature = (*, budget=None, workers=0))]
fn nonexistence_certificate(py: Python<'_>, budget: Option<u64>, workers: usize) -> PyResult<Bound<'_, PyAny>> {
    let cert = py
        .detach(|| certificate::nonexistence_certificate(budget.unwrap_or(DEFAULT_BUDGET), workers))
        .py()?;
    cert.validate().py()?;
    to_python(py, &cert)
}

#[pyfunction]
fn hamming_distance(a: Vec<u32>, b: Vec<u32>) -> PyResult<usize> {
    ameforge_core::hamming_distance(&a, &b).py()
}

#[pymodule]
fn ameforge(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("AmeforgeError", m.py().get_type::<AmeforgeError>())?;
    m.add("BudgetExceededError", m.py().get_type::<BudgetExceededError>())?;
    m.add_class::<PyField>()?;
    m.add_class::<PyCode>()?;
    m.add_class::<PyLinearCode>()?;
    m.add_class::<PyAmeState>()?;
    m.add_function(wrap_pyfunction!(search_systematic_mds, m)?)?;
    m.add_function(wrap_pyfunction!(max_length_dim3, m)?)?;
    m.add_function(wrap_pyfunction!(necessary_condition, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_table, m)?)?;
    m.add_function(wrap_pyfunction!(nonexistence_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(hamming_distance, m)?)?;
    Ok(())
}
