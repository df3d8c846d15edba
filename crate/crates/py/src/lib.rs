use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use golden_birkhoff::birkhoff::RotationSpec;
use golden_birkhoff::corefuncs::KernelId;
use golden_birkhoff::fibarith::{self, Natural};
use golden_birkhoff::goldengraph::{self, Side};
use golden_birkhoff::tau_sigma;

fn err(e: golden_birkhoff::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kernel(name: &str) -> PyResult<KernelId> {
    name.parse().map_err(err)
}

fn rotation(spec: &str) -> PyResult<RotationSpec> {
    spec.parse().map_err(err)
}

/// Taylor table of sigma around 0.
#[pyclass(name = "SigmaTable", frozen)]
struct PySigmaTable(tau_sigma::SigmaTable);

#[pymethods]
impl PySigmaTable {
    #[new]
    #[pyo3(signature = (order=8, levels=vec![20, 22, 24, 26, 28, 30, 32, 34]))]
    fn new(order: usize, levels: Vec<u32>) -> PyResult<Self> {
        tau_sigma::sigma_taylor(order, &levels).map(PySigmaTable).map_err(err)
    }

    #[getter]
    fn coefficients(&self) -> Vec<f64> {
        self.0.coefficients.clone()
    }

    #[getter]
    fn residuals(&self) -> Vec<f64> {
        self.0.residuals.clone()
    }

    #[getter]
    fn radius(&self) -> f64 {
        self.0.radius
    }

    fn eval(&self, y: f64) -> PyResult<f64> {
        tau_sigma::sigma_eval(&self.0, y).map_err(err)
    }

    fn truncation_bound(&self, y: f64) -> f64 {
        self.0.truncation_bound(y)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }
}

/// Block-series estimate of `S_(n-1)(0) / n`.
#[pyclass(name = "HugeEstimate", frozen)]
struct PyHugeEstimate(goldengraph::HugeEstimate);

#[pymethods]
impl PyHugeEstimate {
    #[getter]
    fn estimate(&self) -> f64 {
        self.0.estimate
    }

    #[getter]
    fn oracle(&self) -> Option<f64> {
        self.0.oracle
    }

    #[getter]
    fn level(&self) -> u32 {
        self.0.level
    }

    #[getter]
    fn exponents(&self) -> Vec<u32> {
        self.0.exponents.clone()
    }

    #[getter]
    fn offsets(&self) -> Vec<f64> {
        self.0.offsets.clone()
    }

    #[getter]
    fn terms(&self) -> Vec<f64> {
        self.0.terms.clone()
    }

    #[getter]
    fn error_bound(&self) -> f64 {
        self.0.error_bound
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("HugeEstimate(n={}, estimate={})", self.0.n, self.0.estimate)
    }
}

#[pyfunction]
fn fibonacci(n: u32) -> BigUint {
    fibarith::fibonacci(n).0
}

#[pyfunction]
fn zeckendorf(n: BigUint) -> Vec<u32> {
    fibarith::zeckendorf(&Natural(n)).indices
}

#[pyfunction]
#[pyo3(signature = (x, depth, nearest=false))]
fn beta_expand(x: f64, depth: u32, nearest: bool) -> PyResult<Vec<u32>> {
    let rep = if nearest { fibarith::beta_expand_nearest(x, depth) } else { fibarith::beta_expand(x, depth) };
    rep.map(|r| r.exponents).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (n, kernel_name="cot", rot="golden", theta=0.0))]
fn birkhoff_sum(n: u64, kernel_name: &str, rot: &str, theta: f64) -> PyResult<f64> {
    golden_birkhoff::birkhoff::birkhoff_sum(kernel(kernel_name)?, &rotation(rot)?, theta, n).map_err(err)
}

/// `(xs, values)` of `x -> S_[q x](y / q) / q^norm`.
#[pyfunction]
#[pyo3(signature = (level, grid, kernel_name="cot", rot="golden", y=0.0, norm=1))]
fn birkhoff_graph(
    level: u32,
    grid: usize,
    kernel_name: &str,
    rot: &str,
    y: f64,
    norm: u32,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let g = golden_birkhoff::birkhoff::birkhoff_graph(kernel(kernel_name)?, &rotation(rot)?, y, level, grid, norm)
        .map_err(err)?;
    Ok((g.xs, g.values))
}

#[pyfunction]
fn sigma_approx(y: f64, level: u32) -> PyResult<f64> {
    tau_sigma::sigma_approx(y, level).map_err(err)
}

#[pyfunction]
fn tau_rational(p: i64, q: u64, y: f64) -> PyResult<f64> {
    tau_sigma::tau_rational(p, q, y).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (x, level, y=0.0, left=false))]
fn s_oracle(x: f64, level: u32, y: f64, left: bool) -> PyResult<f64> {
    goldengraph::s_oracle(x, y, level, if left { Side::Left } else { Side::Right }).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (x, depth=60))]
fn caricature(x: f64, depth: u32) -> PyResult<f64> {
    goldengraph::caricature(x, depth).map_err(err)
}

#[pyfunction]
fn estimate(n: BigUint, table: &PySigmaTable) -> PyResult<PyHugeEstimate> {
    goldengraph::estimate_huge(&Natural(n), &table.0).map(PyHugeEstimate).map_err(err)
}

#[pymodule]
fn goldbirk(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ALPHA", fibarith::ALPHA)?;
    m.add_class::<PySigmaTable>()?;
    m.add_class::<PyHugeEstimate>()?;
    m.add_function(wrap_pyfunction!(fibonacci, m)?)?;
    m.add_function(wrap_pyfunction!(zeckendorf, m)?)?;
    m.add_function(wrap_pyfunction!(beta_expand, m)?)?;
    m.add_function(wrap_pyfunction!(birkhoff_sum, m)?)?;
    m.add_function(wrap_pyfunction!(birkhoff_graph, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_approx, m)?)?;
    m.add_function(wrap_pyfunction!(tau_rational, m)?)?;
    m.add_function(wrap_pyfunction!(s_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(caricature, m)?)?;
    m.add_function(wrap_pyfunction!(estimate, m)?)?;
    Ok(())
}
