//! Python bindings for `decaylab`.
//!
//! Reports are returned as plain dictionaries with the same keys as the JSON
//! emitted by the command-line tool.

use std::cell::RefCell;

use decaylab::admissibility::{finite_time_constant, l2_admissibility_constant};
use decaylab::calculus::{decay_curve, resolvent_profile, weiss_constant};
use decaylab::certificates::{theorem54_certificate, CertificateInputs};
use decaylab::rates::{check_thm44, fit_rate, RateForm};
use decaylab::{Complex64, OperatorSymbol, Spectrum};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(pydecaylab, DecaylabError, PyException);

fn to_py(err: decaylab::Error) -> PyErr {
    DecaylabError::new_err(format!("{}: {}", err.kind(), err))
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| DecaylabError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Diagonal semigroup `T(t)x = (e^{λ_n t} x_n)_n` with a fixed eigenvalue sequence.
#[pyclass(module = "pydecaylab", frozen)]
pub struct DiagonalSemigroup {
    spec: Spectrum,
}

#[pymethods]
impl DiagonalSemigroup {
    /// Builds a built-in family, or an explicit spectrum when `modes` is given.
    #[new]
    #[pyo3(signature = (family = "example33", n_max = 1000, params = Vec::new(), modes = None))]
    fn new(family: &str, n_max: usize, params: Vec<f64>, modes: Option<Vec<Complex64>>) -> PyResult<Self> {
        let spec = match modes {
            Some(m) => Spectrum::new(m),
            None => Spectrum::builtin_family(family, &params, n_max),
        }
        .map_err(to_py)?;
        Ok(DiagonalSemigroup { spec })
    }

    #[getter]
    fn n_max(&self) -> usize {
        self.spec.n_max()
    }

    fn modes(&self) -> Vec<Complex64> {
        self.spec.modes().to_vec()
    }

    /// `[(t, ‖T(t)D‖)]` for the symbol `D = d(A)`.
    #[pyo3(signature = (ts, a = 0.0, b = 0.0, scale = 1.0))]
    fn decay_curve(&self, ts: Vec<f64>, a: f64, b: f64, scale: f64) -> PyResult<Vec<(f64, f64)>> {
        decay_curve(&self.spec, &symbol(a, b, scale), &ts).map_err(to_py)
    }

    /// `[(ξ, sup_η ‖R(ξ + iη, A) D‖)]`.
    #[pyo3(signature = (xis, a = 0.0, b = 0.0, scale = 1.0))]
    fn resolvent_profile(&self, xis: Vec<f64>, a: f64, b: f64, scale: f64) -> PyResult<Vec<(f64, f64)>> {
        resolvent_profile(&self.spec, &symbol(a, b, scale), &xis).map_err(to_py)
    }

    #[pyo3(signature = (p = 2.0, a = 0.0, b = 0.0, scale = 1.0))]
    fn weiss<'py>(&self, py: Python<'py>, p: f64, a: f64, b: f64, scale: f64) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &weiss_constant(&self.spec, &symbol(a, b, scale), p).map_err(to_py)?)
    }

    #[pyo3(signature = (a = 0.0, b = 0.0, scale = 1.0))]
    fn l2_admissibility<'py>(&self, py: Python<'py>, a: f64, b: f64, scale: f64) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &l2_admissibility_constant(&self.spec, &symbol(a, b, scale)).map_err(to_py)?)
    }

    #[pyo3(signature = (t1, p = 2.0, a = 0.0, b = 0.0, scale = 1.0))]
    fn finite_admissibility<'py>(&self, py: Python<'py>, t1: f64, p: f64, a: f64, b: f64, scale: f64) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &finite_time_constant(&self.spec, &symbol(a, b, scale), p, t1).map_err(to_py)?)
    }

    #[pyo3(signature = (beta, gamma, a = 0.0, b = 0.0, scale = 1.0))]
    fn thm44_check<'py>(&self, py: Python<'py>, beta: f64, gamma: f64, a: f64, b: f64, scale: f64) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &check_thm44(&self.spec, &symbol(a, b, scale), beta, gamma).map_err(to_py)?)
    }

    fn __repr__(&self) -> String {
        format!("DiagonalSemigroup(n_max={})", self.spec.n_max())
    }
}

fn symbol(a: f64, b: f64, scale: f64) -> OperatorSymbol {
    OperatorSymbol::new(a, b).with_scale(scale)
}

/// Fits `form` ("poly" or "polylog") to a decay curve.
#[pyfunction]
fn fit_decay<'py>(py: Python<'py>, curve: Vec<(f64, f64)>, form: &str) -> PyResult<Bound<'py, PyAny>> {
    let form: RateForm = form.parse().map_err(to_py)?;
    to_dict(py, &fit_rate(&curve, form).map_err(to_py)?)
}

/// Admissibility certificate from log-decay inputs; `m_ft` maps a horizon `τ` to a
/// finite-time constant on `[0, τ]`.
#[pyfunction]
#[pyo3(signature = (beta, m0, t0, c, k, m_ft, alpha = 1.0))]
fn certificate<'py>(
    py: Python<'py>,
    beta: f64,
    m0: f64,
    t0: f64,
    c: f64,
    k: f64,
    m_ft: Bound<'py, PyAny>,
    alpha: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let inputs = CertificateInputs { alpha, beta, m0, t0, c, k };
    let failure = RefCell::new(None);
    let cert = theorem54_certificate(&inputs, |tau| match m_ft.call1((tau,)).and_then(|v| v.extract::<f64>()) {
        Ok(v) => Ok(v),
        Err(e) => {
            let msg = e.to_string();
            *failure.borrow_mut() = Some(e);
            Err(decaylab::Error::InvalidArgument(msg))
        }
    });
    match (cert, failure.into_inner()) {
        (_, Some(e)) => Err(e),
        (Ok(c), None) => to_dict(py, &c),
        (Err(e), None) => Err(to_py(e)),
    }
}

/// Runs the command-line tool in process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = decaylab::harness::cli::run(std::iter::once("decaylab".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn pydecaylab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}

/// Adds the module contents to `m`.
pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<DiagonalSemigroup>()?;
    m.add_function(wrap_pyfunction!(fit_decay, m)?)?;
    m.add_function(wrap_pyfunction!(certificate, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("DecaylabError", m.py().get_type::<DecaylabError>())?;
    Ok(())
}
