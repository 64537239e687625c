//! Python bindings: systems, completion with a chosen strategy, reduced
//! Gröbner bases, the Buchberger oracle, certificates and Janet partitions.
//! Polynomials cross the boundary as strings in the system file syntax.

use std::time::Duration;

use janet_core::engine::{janet_basis_with, EngineOptions};
use janet_core::families::generate_named;
use janet_core::oracle::{buchberger_reduced_gb, certify};
use janet_core::system::parse_polynomial;
use janet_core::{
    extract_reduced_gb, janet_partition as partition, parse_system, Error, Monomial, OrderKind, Polynomial, RunStats,
    Strategy, SystemFile,
};
use pyo3::exceptions::{PyTimeoutError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Timeout { .. } => PyTimeoutError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

fn stats_dict<'py>(py: Python<'py>, stats: &RunStats) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("prolongations_enqueued", stats.prolongations_enqueued)?;
    d.set_item("head_reduction_steps", stats.head_reduction_steps)?;
    d.set_item("tail_reduction_steps", stats.tail_reduction_steps)?;
    d.set_item("zero_reductions", stats.zero_reductions)?;
    d.set_item("displacements", stats.displacements)?;
    d.set_item("insertions", stats.insertions)?;
    d.set_item("max_queue_size", stats.max_queue_size)?;
    d.set_item("basis_size", stats.basis_size)?;
    d.set_item("wall_time_ms", stats.wall_time_ms)?;
    Ok(d)
}

/// A polynomial system: variable names, a monomial order and generators.
#[pyclass(module = "janetpy", frozen, skip_from_py_object)]
#[derive(Clone)]
struct System {
    inner: SystemFile,
}

impl System {
    fn render_all(&self, polys: &[Polynomial]) -> Vec<String> {
        polys.iter().map(|p| self.inner.render_poly(p)).collect()
    }

    fn parse_all(&self, polys: Vec<String>) -> PyResult<Vec<Polynomial>> {
        polys.iter().map(|s| parse_polynomial(s, &self.inner.variables, self.inner.order).map_err(to_py)).collect()
    }
}

#[pymethods]
impl System {
    #[new]
    #[pyo3(signature = (variables, polynomials, order = "degrevlex"))]
    fn new(variables: Vec<String>, polynomials: Vec<String>, order: &str) -> PyResult<System> {
        let kind: OrderKind = order.parse().map_err(to_py)?;
        let order = janet_core::MonomialOrder::new(kind, variables.len()).map_err(to_py)?;
        let polys: Vec<Polynomial> = polynomials
            .iter()
            .map(|s| parse_polynomial(s, &variables, order).map_err(to_py))
            .collect::<PyResult<_>>()?;
        Ok(System { inner: SystemFile::new(variables, kind, polys).map_err(to_py)? })
    }

    /// Parses the text file format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<System> {
        Ok(System { inner: parse_system(text).map_err(to_py)? })
    }

    /// A benchmark system such as `"cyclic-5"`.
    #[staticmethod]
    fn generate(name: &str) -> PyResult<System> {
        Ok(System { inner: generate_named(name).map_err(to_py)? })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.variables.clone()
    }

    #[getter]
    fn order(&self) -> String {
        self.inner.order.kind().to_string()
    }

    #[getter]
    fn polynomials(&self) -> Vec<String> {
        self.render_all(&self.inner.polynomials)
    }

    fn with_order(&self, order: &str) -> PyResult<System> {
        Ok(System { inner: self.inner.with_order(order.parse().map_err(to_py)?) })
    }

    fn render(&self) -> String {
        self.inner.render()
    }

    fn __len__(&self) -> usize {
        self.inner.polynomials.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "System(variables={:?}, order={:?}, {} polynomials)",
            self.inner.variables,
            self.order(),
            self.inner.polynomials.len()
        )
    }

    /// The minimal Janet basis under `strategy` (baseline, I, II-high, II-low).
    #[pyo3(signature = (strategy = "II-low", timeout = None))]
    fn janet_basis(&self, py: Python<'_>, strategy: &str, timeout: Option<f64>) -> PyResult<JanetResult> {
        let strategy: Strategy = strategy.parse().map_err(to_py)?;
        let timeout = match timeout {
            Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
            Some(t) => return Err(PyValueError::new_err(format!("timeout must be positive, got {t}"))),
            None => None,
        };
        let options = EngineOptions { timeout };
        let system = &self.inner;
        let out = py
            .detach(|| janet_basis_with(&system.polynomials, system.order, strategy, &options, &mut |_| {}))
            .map_err(to_py)?;
        Ok(JanetResult { system: self.clone(), strategy, basis: out.basis, stats: out.stats })
    }

    /// Reduced Gröbner basis from the independent Buchberger oracle.
    fn buchberger(&self, py: Python<'_>) -> PyResult<Vec<String>> {
        let system = &self.inner;
        let gb = py.detach(|| buchberger_reduced_gb(&system.polynomials, system.order)).map_err(to_py)?;
        Ok(self.render_all(&gb))
    }

    /// Certificate checks of `basis` against this system's ideal, as a
    /// mapping from property name to pass/fail.
    fn certify<'py>(&self, py: Python<'py>, basis: Vec<String>) -> PyResult<Bound<'py, PyDict>> {
        let basis = self.parse_all(basis)?;
        let system = &self.inner;
        let reports = py.detach(|| certify(&system.polynomials, &basis, system.order)).map_err(to_py)?;
        let d = PyDict::new(py);
        for r in reports {
            d.set_item(r.property.to_string(), r.passed)?;
        }
        Ok(d)
    }
}

/// Output of one completion run.
#[pyclass(module = "janetpy", frozen)]
struct JanetResult {
    system: System,
    strategy: Strategy,
    basis: Vec<Polynomial>,
    stats: RunStats,
}

#[pymethods]
impl JanetResult {
    #[getter]
    fn strategy(&self) -> &'static str {
        self.strategy.name()
    }

    /// Basis elements, ascending by leading monomial.
    #[getter]
    fn basis(&self) -> Vec<String> {
        self.system.render_all(&self.basis)
    }

    #[getter]
    fn stats<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        stats_dict(py, &self.stats)
    }

    fn reduced_groebner_basis(&self) -> Vec<String> {
        self.system.render_all(&extract_reduced_gb(&self.basis, self.system.inner.order))
    }

    fn __len__(&self) -> usize {
        self.basis.len()
    }

    fn __repr__(&self) -> String {
        format!("JanetResult(strategy={:?}, {} elements)", self.strategy.name(), self.basis.len())
    }
}

/// Janet multiplicative variables (0-based indices) for each exponent vector
/// of a monomial set, in input order with duplicates dropped.
#[pyfunction]
fn janet_partition(monomials: Vec<Vec<u32>>) -> PyResult<Vec<(Vec<u32>, Vec<usize>)>> {
    let set: Vec<Monomial> = monomials.into_iter().map(|e| Monomial::new(e).map_err(to_py)).collect::<PyResult<_>>()?;
    let p = partition(&set).map_err(to_py)?;
    let mut out: Vec<(Vec<u32>, Vec<usize>)> = Vec::with_capacity(p.len());
    for u in &set {
        if out.iter().any(|(e, _)| e.as_slice() == u.exponents()) {
            continue;
        }
        let mult = p.multiplicative(u).expect("member of the set");
        out.push((u.exponents().to_vec(), mult.iter().map(|v| v.0).collect()));
    }
    Ok(out)
}

#[pymodule]
fn janetpy(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<System>()?;
    m.add_class::<JanetResult>()?;
    m.add_function(wrap_pyfunction!(janet_partition, m)?)?;
    m.add("STRATEGIES", Strategy::ALL.iter().map(|s| s.name()).collect::<Vec<_>>())?;
    Ok(())
}
