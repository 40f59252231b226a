//! Python module `field_entangle`.

use std::collections::BTreeMap;

use field_entangle::error::Error;
use field_entangle::model::{self, Phase};
use field_entangle::oracle::{self, Subsystem};
use field_entangle::quad::McConfig;
use field_entangle::replica::{self, Line};
use pyo3::exceptions::{PyArithmeticError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Singularity => PyZeroDivisionError::new_err(e.to_string()),
        Error::Divergence(_) | Error::NonConvergence { .. } | Error::Precision { .. } => {
            PyArithmeticError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn renyi(alpha: u32) -> PyResult<model::RenyiIndex> {
    model::RenyiIndex::new(alpha).map_err(to_py)
}

#[pyclass(name = "RenyiIndex", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyRenyiIndex(model::RenyiIndex);

#[pymethods]
impl PyRenyiIndex {
    #[new]
    fn new(alpha: u32) -> PyResult<Self> {
        renyi(alpha).map(PyRenyiIndex)
    }

    #[getter]
    fn value(&self) -> u32 {
        self.0.get()
    }

    fn prefactor(&self) -> f64 {
        self.0.prefactor()
    }

    fn __repr__(&self) -> String {
        format!("RenyiIndex({})", self.0.get())
    }
}

#[pyclass(name = "FieldTheory", frozen, from_py_object)]
#[derive(Clone)]
struct PyFieldTheory(model::FieldTheory);

#[pymethods]
impl PyFieldTheory {
    #[new]
    #[pyo3(signature = (n_fields, coupling, mass, cutoff, phase = "unbroken"))]
    fn new(n_fields: u32, coupling: f64, mass: f64, cutoff: f64, phase: &str) -> PyResult<Self> {
        let phase = match phase {
            "unbroken" => Phase::Unbroken,
            "broken" => Phase::Broken,
            other => return Err(PyValueError::new_err(format!("phase must be 'unbroken' or 'broken', got {other:?}"))),
        };
        model::FieldTheory::new(n_fields, coupling, mass, phase, cutoff).map(PyFieldTheory).map_err(to_py)
    }

    #[getter]
    fn n_fields(&self) -> u32 {
        self.0.n_fields()
    }

    #[getter]
    fn coupling(&self) -> f64 {
        self.0.coupling()
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.0.mass()
    }

    #[getter]
    fn cutoff(&self) -> f64 {
        self.0.cutoff()
    }

    #[getter]
    fn phase(&self) -> &'static str {
        match self.0.phase() {
            Phase::Unbroken => "unbroken",
            Phase::Broken => "broken",
        }
    }

    fn with_cutoff(&self, cutoff: f64) -> PyResult<Self> {
        self.0.with_cutoff(cutoff).map(PyFieldTheory).map_err(to_py)
    }

    /// Shift scale, formal masses and vev as a dict.
    #[pyo3(signature = (lambda_u, c_t = model::DEFAULT_C_T))]
    fn ssb_parameters(&self, lambda_u: f64, c_t: f64) -> PyResult<BTreeMap<&'static str, f64>> {
        let p = self.0.ssb_parameters(lambda_u, c_t).map_err(to_py)?;
        Ok(BTreeMap::from([
            ("shift_scale", p.shift_scale),
            ("m_sigma_eff", p.m_sigma_eff),
            ("m_pi_eff", p.m_pi_eff),
            ("c_t", p.c_t),
            ("vev", p.vev),
        ]))
    }

    fn __repr__(&self) -> String {
        format!(
            "FieldTheory(n_fields={}, coupling={}, mass={}, cutoff={}, phase={:?})",
            self.0.n_fields(),
            self.0.coupling(),
            self.0.mass(),
            self.0.cutoff(),
            self.phase()
        )
    }
}

#[pyclass(name = "EntropyResult", frozen)]
struct PyEntropyResult(replica::EntropyResult);

#[pymethods]
impl PyEntropyResult {
    #[getter]
    fn value_per_volume(&self) -> f64 {
        self.0.value_per_volume
    }

    #[getter]
    fn error(&self) -> f64 {
        self.0.error
    }

    #[getter]
    fn alpha(&self) -> u32 {
        self.0.alpha.get()
    }

    #[getter]
    fn cutoff(&self) -> f64 {
        self.0.cutoff
    }

    #[getter]
    fn contributions(&self) -> BTreeMap<String, f64> {
        self.0.contributions.iter().map(|c| (c.label.clone(), c.value)).collect()
    }

    fn __repr__(&self) -> String {
        format!("EntropyResult(value_per_volume={:e}, error={:e})", self.0.value_per_volume, self.0.error)
    }
}

#[pyclass(name = "LatticeSpec", frozen, from_py_object)]
#[derive(Clone, Copy)]
struct PyLatticeSpec(oracle::LatticeSpec);

#[pymethods]
impl PyLatticeSpec {
    #[new]
    #[pyo3(signature = (sites, mass_phi, mass_chi, bilinear_g, dims = 1))]
    fn new(sites: usize, mass_phi: f64, mass_chi: f64, bilinear_g: f64, dims: u32) -> PyResult<Self> {
        oracle::LatticeSpec::new(dims, sites, mass_phi, mass_chi, bilinear_g).map(PyLatticeSpec).map_err(to_py)
    }

    #[getter]
    fn sites(&self) -> usize {
        self.0.sites()
    }

    #[getter]
    fn dims(&self) -> u32 {
        self.0.dims()
    }

    #[getter]
    fn bilinear_g(&self) -> f64 {
        self.0.bilinear_g()
    }
}

fn wrap(r: field_entangle::Result<replica::EntropyResult>) -> PyResult<PyEntropyResult> {
    r.map(PyEntropyResult).map_err(to_py)
}

#[pyfunction]
fn renyi_cubic(alpha: u32, coupling: f64, vev: f64, mass: f64, cutoff: f64) -> PyResult<PyEntropyResult> {
    wrap(replica::renyi_cubic(renyi(alpha)?, coupling, vev, mass, cutoff))
}

#[pyfunction]
fn renyi_unbroken(alpha: u32, model: &PyFieldTheory) -> PyResult<PyEntropyResult> {
    wrap(replica::renyi_unbroken(renyi(alpha)?, &model.0))
}

#[pyfunction]
#[pyo3(signature = (alpha, model, lambda_u, c_t = model::DEFAULT_C_T))]
fn renyi_ssb(alpha: u32, model: &PyFieldTheory, lambda_u: f64, c_t: f64) -> PyResult<PyEntropyResult> {
    wrap(replica::renyi_ssb(renyi(alpha)?, &model.0, lambda_u, c_t))
}

#[pyfunction]
#[pyo3(signature = (alpha, model, lambda_u, c_t = model::DEFAULT_C_T))]
fn renyi_ssb_pi(alpha: u32, model: &PyFieldTheory, lambda_u: f64, c_t: f64) -> PyResult<PyEntropyResult> {
    wrap(replica::renyi_ssb_pi(renyi(alpha)?, &model.0, lambda_u, c_t))
}

#[pyfunction]
#[pyo3(signature = (alpha, model, samples, seed, tolerance = Some(replica::XCHECK_DEFAULT_TOLERANCE)))]
fn xcheck_momentum(alpha: u32, model: &PyFieldTheory, samples: u64, seed: u64, tolerance: Option<f64>) -> PyResult<PyEntropyResult> {
    let cfg = McConfig::new(samples, seed).with_tolerance(tolerance);
    wrap(replica::xcheck_momentum_with(renyi(alpha)?, &model.0, &cfg))
}

/// `(prefactor, exponent, rms residual)` of a log-log fit.
#[pyfunction]
fn fit_power_law(points: Vec<(f64, f64)>) -> PyResult<(f64, f64, f64)> {
    let f = replica::fit_power_law(&points).map_err(to_py)?;
    Ok((f.prefactor, f.exponent, f.residual))
}

/// Half-space integral over PV-regulated lines given as `(mass, regulator)`.
#[pyfunction]
fn discordant_integral(lines: Vec<(f64, f64)>, cutoff_hint: f64) -> PyResult<(f64, f64)> {
    let lines: Vec<Line> = lines.into_iter().map(|(m, l)| Line::regulated(m, l)).collect();
    let r = replica::discordant_integral(&lines, cutoff_hint).map_err(to_py)?;
    Ok((r.value, r.error))
}

#[pyfunction]
fn short_range_fraction(lines: Vec<(f64, f64)>, cutoff: f64, range: f64) -> PyResult<f64> {
    let lines: Vec<Line> = lines.into_iter().map(|(m, l)| Line::regulated(m, l)).collect();
    replica::short_range_fraction(&lines, cutoff, range).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (lambda_u, n_fields, cutoff, c_t = model::DEFAULT_C_T))]
fn ssb_shift_scale(lambda_u: f64, n_fields: u32, cutoff: f64, c_t: f64) -> PyResult<f64> {
    model::ssb_shift_scale(lambda_u, n_fields, cutoff, c_t).map_err(to_py)
}

#[pyfunction]
fn effective_masses(coupling: f64, shift_scale: f64) -> PyResult<(f64, f64)> {
    model::effective_masses(coupling, shift_scale).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (spec, alpha, subsystem = "phi"))]
fn renyi_field_entropy(spec: &PyLatticeSpec, alpha: u32, subsystem: &str) -> PyResult<f64> {
    let sub = match subsystem {
        "phi" => Subsystem::Phi,
        "chi" => Subsystem::Chi,
        other => return Err(PyValueError::new_err(format!("subsystem must be 'phi' or 'chi', got {other:?}"))),
    };
    oracle::renyi_subsystem_entropy(&spec.0, alpha, sub).map_err(to_py)
}

#[pymodule]
#[pyo3(name = "field_entangle")]
fn field_entangle_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRenyiIndex>()?;
    m.add_class::<PyFieldTheory>()?;
    m.add_class::<PyEntropyResult>()?;
    m.add_class::<PyLatticeSpec>()?;
    m.add_function(wrap_pyfunction!(renyi_cubic, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_unbroken, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_ssb, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_ssb_pi, m)?)?;
    m.add_function(wrap_pyfunction!(xcheck_momentum, m)?)?;
    m.add_function(wrap_pyfunction!(fit_power_law, m)?)?;
    m.add_function(wrap_pyfunction!(discordant_integral, m)?)?;
    m.add_function(wrap_pyfunction!(short_range_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(ssb_shift_scale, m)?)?;
    m.add_function(wrap_pyfunction!(effective_masses, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_field_entropy, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
