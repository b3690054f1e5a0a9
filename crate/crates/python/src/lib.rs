//! Python bindings: `import catsize`.
//!
//! Every core error surfaces as `ValueError`.

use catsize_core::channels::ChannelKind;
use catsize_core::decoherence;
use catsize_core::distillation;
use catsize_core::loss::{self, LossModel};
use catsize_core::validation;
use catsize_core::{cat, EffectiveSizeReport};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict};

fn to_py(e: catsize_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn channel_kind(name: &str) -> PyResult<ChannelKind> {
    match name {
        "dephasing" => Ok(ChannelKind::Dephasing),
        "depolarizing" => Ok(ChannelKind::Depolarizing),
        other => Err(PyValueError::new_err(format!(
            "unknown channel {other:?}; expected \"dephasing\" or \"depolarizing\""
        ))),
    }
}

/// Cat state |φ₁⟩^⊗N + |φ₂⟩^⊗N with single-qubit half-angle ε.
#[pyclass(name = "CatParams", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyCatParams(cat::CatParams);

#[pymethods]
impl PyCatParams {
    #[new]
    fn new(n: u64, epsilon: f64) -> PyResult<Self> {
        cat::CatParams::new(n, epsilon).map(Self).map_err(to_py)
    }

    /// Builds from the overlap deficit 1 − |⟨φ₁|φ₂⟩|² via ε = asin(√deficit).
    #[staticmethod]
    fn from_overlap_deficit(n: u64, deficit: f64) -> PyResult<Self> {
        cat::CatParams::from_overlap_deficit(n, deficit)
            .map(Self)
            .map_err(to_py)
    }

    #[getter]
    fn n(&self) -> u64 {
        self.0.n()
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.0.epsilon()
    }

    #[getter]
    fn cos_eps(&self) -> f64 {
        self.0.cos_eps()
    }

    #[getter]
    fn sin_eps(&self) -> f64 {
        self.0.sin_eps()
    }

    /// N ln cos ε.
    #[getter]
    fn log_cn(&self) -> f64 {
        self.0.log_cn()
    }

    /// |⟨φ₁|φ₂⟩^N|² = cos^{2N} ε.
    fn term_overlap(&self) -> f64 {
        cat::term_overlap(&self.0).value
    }

    fn normalization_k(&self) -> f64 {
        cat::normalization_k(&self.0)
    }

    /// Single-qubit reduced state as a nested list of complex entries.
    fn reduced_rho1<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyComplex>>>> {
        let rho = cat::reduced_rho1(&self.0).map_err(to_py)?;
        let op = rho.operator();
        Ok((0..2)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        let z = op.get(i, j);
                        PyComplex::from_doubles(py, z.re, z.im)
                    })
                    .collect()
            })
            .collect())
    }

    /// von Neumann entropy of the reduced state, in bits.
    fn entropy_s1(&self) -> PyResult<f64> {
        cat::entropy_s1(&self.0).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("CatParams(n={}, epsilon={})", self.0.n(), self.0.epsilon())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

/// All effective-size measures for one cat state.
#[pyclass(name = "EffectiveSizeReport", frozen, get_all)]
struct PyReport {
    #[pyo3(name = "N")]
    n: u64,
    epsilon: f64,
    n_decoherence: f64,
    n_distill_mean: f64,
    n_distill_upper_exact: f64,
    n_distill_upper_asymptotic: f64,
    n_loss: f64,
    #[pyo3(name = "reference_N_eps_sq")]
    reference_n_eps_sq: f64,
}

impl From<EffectiveSizeReport> for PyReport {
    fn from(r: EffectiveSizeReport) -> Self {
        Self {
            n: r.n,
            epsilon: r.epsilon,
            n_decoherence: r.n_decoherence,
            n_distill_mean: r.n_distill_mean,
            n_distill_upper_exact: r.n_distill_upper_exact,
            n_distill_upper_asymptotic: r.n_distill_upper_asymptotic,
            n_loss: r.n_loss,
            reference_n_eps_sq: r.reference_n_eps_sq,
        }
    }
}

#[pymethods]
impl PyReport {
    /// Same JSON document as `catsize effective-size`.
    fn to_json(&self) -> String {
        self.core().to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "EffectiveSizeReport(N={}, epsilon={}, n_decoherence={}, n_distill_mean={}, n_loss={})",
            self.n, self.epsilon, self.n_decoherence, self.n_distill_mean, self.n_loss
        )
    }
}

impl PyReport {
    fn core(&self) -> EffectiveSizeReport {
        EffectiveSizeReport {
            n: self.n,
            epsilon: self.epsilon,
            n_decoherence: self.n_decoherence,
            n_distill_mean: self.n_distill_mean,
            n_distill_upper_exact: self.n_distill_upper_exact,
            n_distill_upper_asymptotic: self.n_distill_upper_asymptotic,
            n_loss: self.n_loss,
            reference_n_eps_sq: self.reference_n_eps_sq,
        }
    }
}

#[pyfunction]
fn effective_size_report(params: PyCatParams) -> PyResult<PyReport> {
    EffectiveSizeReport::new(&params.0)
        .map(PyReport::from)
        .map_err(to_py)
}

/// N sin²ε.
#[pyfunction]
fn effective_size_decoherence(params: PyCatParams) -> f64 {
    decoherence::effective_size_decoherence(&params.0)
}

/// N(1 − cos ε).
#[pyfunction]
fn effective_size_loss(params: PyCatParams) -> f64 {
    loss::effective_size_loss(&params.0)
}

#[pyfunction]
fn ghz_offdiag_norm(n: u64, gamma_t: f64) -> PyResult<f64> {
    decoherence::ghz_offdiag_norm(n, gamma_t).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (params, gamma_t, channel = "dephasing"))]
fn cat_offdiag_norm(params: PyCatParams, gamma_t: f64, channel: &str) -> PyResult<f64> {
    decoherence::cat_offdiag_norm(&params.0, gamma_t, channel_kind(channel)?).map_err(to_py)
}

/// `{"gamma_t": [...], "ghz_norm": [...], "cat_norm": [...]}`.
#[pyfunction]
fn decay_curve<'py>(
    py: Python<'py>,
    params: PyCatParams,
    n_ref: u64,
    grid: Vec<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let c = decoherence::decay_curve(&params.0, n_ref, &grid).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("gamma_t", c.times)?;
    d.set_item("ghz_norm", c.ghz_norm)?;
    d.set_item("cat_norm", c.cat_norm)?;
    Ok(d)
}

/// (1 − c)N / (1 + c^N).
#[pyfunction]
fn expected_n(params: PyCatParams) -> f64 {
    distillation::expected_n(&params.0)
}

/// Exact probabilities q₀…q_N of distilling GHZ_n.
#[pyfunction]
fn outcome_distribution(params: PyCatParams) -> Vec<f64> {
    distillation::outcome_distribution(&params.0).q()
}

/// Histogram of distilled sizes over `trials` seeded runs (index = GHZ size).
#[pyfunction]
fn simulate_protocol(
    py: Python<'_>,
    params: PyCatParams,
    trials: u64,
    seed: u64,
) -> PyResult<Vec<u64>> {
    py.detach(|| distillation::simulate_protocol(&params.0, trials, seed))
        .map(|mc| mc.counts)
        .map_err(to_py)
}

/// `{"exact_bound", "asymptotic_bound", "lower_bound_mean"}`.
#[pyfunction]
fn distillation_bound<'py>(py: Python<'py>, params: PyCatParams) -> PyResult<Bound<'py, PyDict>> {
    let b = distillation::distillation_bound(&params.0).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("exact_bound", b.exact_bound)?;
    d.set_item("asymptotic_bound", b.asymptotic_bound)?;
    d.set_item("lower_bound_mean", b.lower_bound_mean)?;
    Ok(d)
}

/// (1 − λ)^n.
#[pyfunction]
fn ghz_loss_suppression(n: u64, lam: f64) -> PyResult<f64> {
    let model = LossModel::new(lam).map_err(to_py)?;
    loss::ghz_loss_suppression(n, &model).map_err(to_py)
}

#[pyfunction]
fn cat_loss_suppression(params: PyCatParams, lam: f64) -> PyResult<f64> {
    let model = LossModel::new(lam).map_err(to_py)?;
    Ok(loss::cat_loss_suppression(&params.0, &model))
}

/// `{"lambda": [...], "ghz_suppression": [...], "cat_suppression": [...]}`.
#[pyfunction]
fn loss_curve<'py>(
    py: Python<'py>,
    params: PyCatParams,
    n_ref: u64,
    grid: Vec<f64>,
) -> PyResult<Bound<'py, PyDict>> {
    let c = loss::loss_curve(&params.0, n_ref, &grid).map_err(to_py)?;
    let d = PyDict::new(py);
    d.set_item("lambda", c.lambdas)?;
    d.set_item("ghz_suppression", c.ghz_suppression)?;
    d.set_item("cat_suppression", c.cat_suppression)?;
    Ok(d)
}

/// Oracle-equivalence suite; one dict per check.
#[pyfunction]
fn run_validation<'py>(py: Python<'py>, max_n: u64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let results = py
        .detach(|| validation::run_validation(max_n))
        .map_err(to_py)?;
    results
        .into_iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("passed", r.passed())?;
            d.set_item("name", r.name)?;
            d.set_item("cases", r.cases)?;
            d.set_item("max_error", r.max_error)?;
            d.set_item("tolerance", r.tolerance)?;
            d.set_item("worst_case", r.worst_case)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn catsize(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCatParams>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(effective_size_report, m)?)?;
    m.add_function(wrap_pyfunction!(effective_size_decoherence, m)?)?;
    m.add_function(wrap_pyfunction!(effective_size_loss, m)?)?;
    m.add_function(wrap_pyfunction!(ghz_offdiag_norm, m)?)?;
    m.add_function(wrap_pyfunction!(cat_offdiag_norm, m)?)?;
    m.add_function(wrap_pyfunction!(decay_curve, m)?)?;
    m.add_function(wrap_pyfunction!(expected_n, m)?)?;
    m.add_function(wrap_pyfunction!(outcome_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_protocol, m)?)?;
    m.add_function(wrap_pyfunction!(distillation_bound, m)?)?;
    m.add_function(wrap_pyfunction!(ghz_loss_suppression, m)?)?;
    m.add_function(wrap_pyfunction!(cat_loss_suppression, m)?)?;
    m.add_function(wrap_pyfunction!(loss_curve, m)?)?;
    m.add_function(wrap_pyfunction!(run_validation, m)?)?;
    Ok(())
}
