//! Python bindings for `clairvoyant-core`.

use clairvoyant_core::experiments::{self, TrialPlan};
use clairvoyant_core::mazery::{self, Orientation};
use clairvoyant_core::scaleup::{self, ExponentTuple, MazeryParams, ParamConfig};
use clairvoyant_core::{engine, EmbeddingPath, Error};
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    match e {
        Error::InputBounds { .. } | Error::CompositionDomain { .. } => PyIndexError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

#[pyclass(name = "BinarySequence", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySequence(clairvoyant_core::BinarySequence);

#[pymethods]
impl PySequence {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        clairvoyant_core::BinarySequence::parse_bytes(text.as_bytes()).map(PySequence).map_err(err)
    }

    #[staticmethod]
    fn random(length: usize, seed: u64) -> Self {
        let mut rng = clairvoyant_core::sampling::trial_rng(seed, 0);
        PySequence(clairvoyant_core::BinarySequence::random(length, &mut rng))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// 1-based symbol access.
    fn __getitem__(&self, i: i64) -> PyResult<u8> {
        match i {
            1.. if (i as usize) <= self.0.len() => Ok(self.0.get(i as usize) as u8),
            _ => Err(PyIndexError::new_err(format!("index {i} outside 1..={}", self.0.len()))),
        }
    }

    fn __str__(&self) -> String {
        self.0.to_text()
    }

    fn __repr__(&self) -> String {
        format!("BinarySequence('{}')", self.0.to_text())
    }
}

#[pyclass(name = "EmbeddingPath", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPath(EmbeddingPath);

#[pymethods]
impl PyPath {
    #[new]
    fn new(m: usize, steps: Vec<usize>) -> Self {
        PyPath(EmbeddingPath::new(m, steps))
    }

    #[getter]
    fn m(&self) -> usize {
        self.0.gap_bound
    }

    #[getter]
    fn steps(&self) -> Vec<usize> {
        self.0.steps.clone()
    }

    fn gaps_valid(&self) -> bool {
        self.0.gaps_valid()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("EmbeddingPath(m={}, steps={:?})", self.0.gap_bound, self.0.steps)
    }
}

fn rows_or_all(y: &PySequence, rows: Option<usize>) -> usize {
    rows.unwrap_or(y.0.len())
}

/// Returns `(embeddable, frontier positions in the last row)`.
#[pyfunction]
#[pyo3(signature = (x, y, m, rows=None))]
fn embeddable_prefix(x: &PySequence, y: &PySequence, m: usize, rows: Option<usize>) -> PyResult<(bool, Vec<usize>)> {
    let d = engine::embeddable_prefix(&x.0, &y.0, m, rows_or_all(y, rows)).map_err(err)?;
    Ok((d.embeddable, d.frontier.to_vec()))
}

#[pyfunction]
#[pyo3(signature = (x, y, m, rows=None))]
fn extract_embedding(x: &PySequence, y: &PySequence, m: usize, rows: Option<usize>) -> PyResult<Option<PyPath>> {
    Ok(engine::extract_embedding(&x.0, &y.0, m, rows_or_all(y, rows)).map_err(err)?.map(PyPath))
}

#[pyfunction]
fn check_embedding(x: &PySequence, y: &PySequence, path: &PyPath) -> bool {
    engine::check_embedding(&x.0, &y.0, &path.0)
}

#[pyfunction]
fn compose_embeddings(inner: &PyPath, outer: &PyPath) -> PyResult<PyPath> {
    engine::compose_embeddings(&inner.0, &outer.0).map(PyPath).map_err(err)
}

/// Level-1 walls as `(left, right, rank)` triples; `orientation` is `"v"` or `"h"`.
#[pyfunction]
#[pyo3(signature = (seq, m, orientation="v"))]
fn find_walls(seq: &PySequence, m: usize, orientation: &str) -> PyResult<Vec<(i64, i64, i64)>> {
    let o = match orientation {
        "v" => Orientation::Vertical,
        "h" => Orientation::Horizontal,
        _ => return Err(PyValueError::new_err("orientation must be 'v' or 'h'")),
    };
    Ok(mazery::find_walls(&seq.0, m, o).iter().map(|w| (w.left(), w.right(), w.rank)).collect())
}

fn exponents(overrides: Option<Vec<(String, String)>>) -> PyResult<ExponentTuple> {
    let pairs = overrides.unwrap_or_default();
    ExponentTuple::with_overrides(pairs.iter().map(|(k, v)| (k.as_str(), v.as_str()))).map_err(err)
}

/// Constraint name to `ok`, in declaration order.
#[pyfunction]
#[pyo3(signature = (overrides=None))]
fn verify_exponents(overrides: Option<Vec<(String, String)>>) -> PyResult<Vec<(String, bool)>> {
    let report = scaleup::verify_exponents(&exponents(overrides)?).map_err(err)?;
    Ok(report.checks.iter().map(|c| (c.constraint.name().to_string(), c.ok)).collect())
}

fn params_dict<'py>(py: Python<'py>, p: &MazeryParams) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("level", p.level)?;
    d.set_item("R", p.r_f64())?;
    d.set_item("T", p.t())?;
    d.set_item("Delta", p.delta())?;
    d.set_item("Gamma", p.gamma())?;
    d.set_item("Phi", p.phi())?;
    d.set_item("Psi", p.psi())?;
    d.set_item("w", p.w())?;
    d.set_item("slb", p.slb_f64())?;
    d.set_item("slope_sanity", p.slope_sanity())?;
    Ok(d)
}

fn base_params(m: u32, overrides: Option<Vec<(String, String)>>) -> PyResult<(ExponentTuple, MazeryParams)> {
    let e = exponents(overrides)?;
    let base = MazeryParams::base(&e, m, &ParamConfig::default()).map_err(err)?;
    Ok((e, base))
}

#[pyfunction]
#[pyo3(signature = (m, k, overrides=None))]
fn level_params<'py>(py: Python<'py>, m: u32, k: u32, overrides: Option<Vec<(String, String)>>) -> PyResult<Bound<'py, PyDict>> {
    let (e, base) = base_params(m, overrides)?;
    params_dict(py, &scaleup::level_params(&e, &base, k).map_err(err)?)
}

/// Returns `(rows, horizon)`.
#[pyfunction]
#[pyo3(signature = (m, levels, overrides=None))]
fn level_table<'py>(
    py: Python<'py>,
    m: u32,
    levels: u32,
    overrides: Option<Vec<(String, String)>>,
) -> PyResult<(Vec<Bound<'py, PyDict>>, u32)> {
    let (e, base) = base_params(m, overrides)?;
    let table = scaleup::level_table(&e, &base, levels).map_err(err)?;
    let rows = table.levels.iter().map(|p| params_dict(py, p)).collect::<PyResult<_>>()?;
    Ok((rows, table.horizon))
}

#[pyfunction]
#[pyo3(signature = (m, l, trials, seed, x_length=None))]
fn estimate_embed_prob<'py>(
    py: Python<'py>,
    m: usize,
    l: usize,
    trials: u64,
    seed: u64,
    x_length: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let plan = TrialPlan { master_seed: seed, trials, m, l, x_length };
    let row = py.detach(|| experiments::estimate_embed_prob(&plan)).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("m", row.m)?;
    d.set_item("L", row.l)?;
    d.set_item("trials", row.trials)?;
    d.set_item("successes", row.successes)?;
    d.set_item("p_hat", row.p_hat)?;
    d.set_item("ci_low", row.ci_low)?;
    d.set_item("ci_high", row.ci_high)?;
    d.set_item("rng_id", row.rng_id)?;
    d.set_item("master_seed", row.master_seed)?;
    Ok(d)
}

#[pymodule]
fn clairvoyant(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", clairvoyant_core::VERSION)?;
    m.add_class::<PySequence>()?;
    m.add_class::<PyPath>()?;
    m.add_function(wrap_pyfunction!(embeddable_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(extract_embedding, m)?)?;
    m.add_function(wrap_pyfunction!(check_embedding, m)?)?;
    m.add_function(wrap_pyfunction!(compose_embeddings, m)?)?;
    m.add_function(wrap_pyfunction!(find_walls, m)?)?;
    m.add_function(wrap_pyfunction!(verify_exponents, m)?)?;
    m.add_function(wrap_pyfunction!(level_params, m)?)?;
    m.add_function(wrap_pyfunction!(level_table, m)?)?;
    m.add_function(wrap_pyfunction!(estimate_embed_prob, m)?)?;
    Ok(())
}
