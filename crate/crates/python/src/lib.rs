//! Python module `biquot`: the `tor`, `verify` and `cochains` reports as dicts
//! (or text), computed exactly in Rust.

use ::biquot::input::parse_job;
use ::biquot::report::{cochains_report, tor_report, verify_report, Overrides, ReportError};
use ::biquot::FieldChoice;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;
use std::fmt::Display;

fn overrides(
    field: Option<&str>,
    degree_bound: Option<i32>,
    length_bound: Option<usize>,
) -> PyResult<Overrides> {
    let field = field
        .map(FieldChoice::parse)
        .transpose()
        .map_err(PyValueError::new_err)?;
    Ok(Overrides {
        field,
        degree: degree_bound,
        length: length_bound,
    })
}

fn value_error(e: ReportError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_python<'py, R: Serialize + Display>(
    py: Python<'py>,
    report: &R,
    text: bool,
) -> PyResult<Bound<'py, PyAny>> {
    if text {
        return Ok(report.to_string().into_pyobject(py)?.into_any());
    }
    let json = serde_json::to_string(report).expect("reports serialize");
    py.import("json")?.call_method1("loads", (json,))
}

/// Tor of the diagram in a JSON job, by the bar and Koszul complexes.
#[pyfunction]
#[pyo3(signature = (job, field=None, degree_bound=None, text=false))]
fn tor<'py>(
    py: Python<'py>,
    job: &str,
    field: Option<&str>,
    degree_bound: Option<i32>,
    text: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let job = parse_job(job).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let o = overrides(field, degree_bound, None)?;
    let report = py.detach(|| tor_report(&job, o)).map_err(value_error)?;
    to_python(py, &report, text)
}

/// Runs an identity suite on a built-in example.
#[pyfunction]
#[pyo3(signature = (suite, example, degree_bound=None, length_bound=None, i=None, field=None, text=false))]
#[allow(clippy::too_many_arguments)]
fn verify<'py>(
    py: Python<'py>,
    suite: &str,
    example: &str,
    degree_bound: Option<i32>,
    length_bound: Option<usize>,
    i: Option<usize>,
    field: Option<&str>,
    text: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let o = overrides(field, degree_bound, length_bound)?;
    let report = py
        .detach(|| verify_report(suite, example, i, o))
        .map_err(value_error)?;
    to_python(py, &report, text)
}

/// Cochain algebra of `simplicial_sets[index]` in a JSON job.
#[pyfunction]
#[pyo3(signature = (job, index=0, degree_bound=None, length_bound=None, field=None, text=false))]
fn cochains<'py>(
    py: Python<'py>,
    job: &str,
    index: usize,
    degree_bound: Option<i32>,
    length_bound: Option<usize>,
    field: Option<&str>,
    text: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let job = parse_job(job).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let o = overrides(field, degree_bound, length_bound)?;
    let report = py
        .detach(|| cochains_report(&job, index, o))
        .map_err(value_error)?;
    to_python(py, &report, text)
}

#[pymodule]
fn biquot(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(tor, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(cochains, m)?)?;
    Ok(())
}
