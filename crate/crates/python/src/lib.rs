//! Python bindings: measurement settings, Bell-operator specs, pure
//! states, and the main operations (spectra, correlations, the classical
//! bound, and the violation optimizer).

use num_complex::Complex;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use bellviol::{
    build_bellN, correlation_closed, correlation_direct, eigh, largest_eig_formula,
    largest_eig_sq_formula, lhv_max, optimize_violation, starred_cos_identity, BellSpec, CMatrix,
    CorrelationQuery, MeasurementSettings, PairingPattern, PureState as CorePureState, Sign,
    SignPattern as CoreSignPattern,
};

fn value_err(e: bellviol::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_pattern(zs: Vec<i8>) -> PyResult<CoreSignPattern> {
    CoreSignPattern::from_signs(&zs).map_err(value_err)
}

fn parse_branch(branch: i8) -> PyResult<Sign> {
    Sign::from_i8(branch).map_err(value_err)
}

/// Planar measurement settings: one (phi, phi') azimuth pair per particle.
#[pyclass(frozen, name = "Settings")]
struct Settings {
    inner: MeasurementSettings,
}

#[pymethods]
impl Settings {
    #[new]
    fn new(phi: Vec<f64>, phi_prime: Vec<f64>) -> PyResult<Self> {
        Ok(Settings {
            inner: MeasurementSettings::new(&phi, &phi_prime).map_err(value_err)?,
        })
    }

    /// phi_i = 0, phi'_i = theta for every particle.
    #[staticmethod]
    fn uniform(n: usize, theta: f64) -> PyResult<Self> {
        Ok(Settings {
            inner: MeasurementSettings::uniform(n, theta).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn phi(&self) -> Vec<f64> {
        self.inner.phis()
    }

    #[getter]
    fn phi_prime(&self) -> Vec<f64> {
        self.inner.phi_primes()
    }

    /// Included angles theta_i = phi'_i - phi_i.
    #[getter]
    fn thetas(&self) -> Vec<f64> {
        (0..self.inner.n()).map(|i| self.inner.theta(i)).collect()
    }

    /// Closed-form largest |eigenvalue| (three particles only).
    fn largest_eigenvalue(&self) -> PyResult<f64> {
        largest_eig_formula(&self.inner).map_err(value_err)
    }

    /// Closed-form largest eigenvalue of the squared operator.
    fn largest_eigenvalue_squared(&self) -> PyResult<f64> {
        largest_eig_sq_formula(&self.inner).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!(
            "Settings(phi={:?}, phi_prime={:?})",
            self.inner.phis(),
            self.inner.phi_primes()
        )
    }
}

/// Four-term Bell-operator specification: settings, sign factors
/// (product -1), per-particle row pairing, and the primed-pair assignment.
#[pyclass(frozen, name = "Spec")]
struct Spec {
    inner: BellSpec,
}

#[pymethods]
impl Spec {
    #[new]
    #[pyo3(signature = (settings, signs=None, pairing=None, delta_primed=None))]
    fn new(
        settings: &Settings,
        signs: Option<[i8; 4]>,
        pairing: Option<Vec<String>>,
        delta_primed: Option<Vec<bool>>,
    ) -> PyResult<Self> {
        let n = settings.inner.n();
        let signs = match signs {
            None => [Sign::Plus, Sign::Plus, Sign::Plus, Sign::Minus],
            Some(raw) => {
                let mut out = [Sign::Plus; 4];
                for (s, r) in out.iter_mut().zip(raw) {
                    *s = Sign::from_i8(r).map_err(value_err)?;
                }
                out
            }
        };
        let pairing = match pairing {
            None => BellSpec::default_pairing(n),
            Some(names) => names
                .iter()
                .map(|s| PairingPattern::from_name(s))
                .collect::<Result<_, _>>()
                .map_err(value_err)?,
        };
        Ok(Spec {
            inner: BellSpec::new(settings.inner.clone(), signs, pairing, delta_primed)
                .map_err(value_err)?,
        })
    }

    /// Default structure: signs (+,+,+,-), pairing chain [P3, P2, P1, ...].
    #[staticmethod]
    fn standard(settings: &Settings) -> PyResult<Self> {
        Ok(Spec {
            inner: BellSpec::standard(settings.inner.clone()).map_err(value_err)?,
        })
    }

    /// Spec whose GHZ states on the given pattern are -4/+4 eigenvectors
    /// (odd particle counts only).
    #[staticmethod]
    fn ghz_adapted(phases: Vec<f64>, pattern: Vec<i8>) -> PyResult<Self> {
        Ok(Spec {
            inner: BellSpec::ghz_adapted(&phases, &parse_pattern(pattern)?).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn signs(&self) -> [i8; 4] {
        self.inner.signs().map(|s| s.to_i8())
    }

    #[getter]
    fn pairing(&self) -> Vec<&'static str> {
        self.inner.pairing().iter().map(|p| p.name()).collect()
    }

    /// Builds the dense operator.
    fn operator(&self) -> PyResult<BellOperator> {
        Ok(BellOperator {
            matrix: build_bellN(&self.inner).map_err(value_err)?,
            n: self.inner.n(),
        })
    }

    /// Exhaustive classical bound: (maximum, per-particle assignments).
    fn lhv_max(&self) -> PyResult<(f64, Vec<(i8, i8)>)> {
        let (max, assignment) = lhv_max(&self.inner).map_err(value_err)?;
        Ok((max, assignment.values))
    }
}

/// Dense Hermitian Bell operator with its spectral machinery.
#[pyclass(frozen, name = "BellOperator")]
struct BellOperator {
    matrix: CMatrix,
    n: usize,
}

#[pymethods]
impl BellOperator {
    #[getter]
    fn n(&self) -> usize {
        self.n
    }

    #[getter]
    fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// Ascending eigenvalues.
    fn eigenvalues(&self) -> PyResult<Vec<f64>> {
        Ok(eigh(&self.matrix).map_err(value_err)?.eigenvalues)
    }

    fn max_abs_eigenvalue(&self) -> PyResult<f64> {
        Ok(eigh(&self.matrix).map_err(value_err)?.max_abs_eigenvalue())
    }

    /// `<psi|B|psi>`.
    fn expectation(&self, state: &State) -> PyResult<f64> {
        bellviol::expectation(&self.matrix, state.inner.amplitudes()).map_err(value_err)
    }

    /// Matrix entries as nested lists of complex numbers.
    fn entries(&self) -> Vec<Vec<Complex<f64>>> {
        let d = self.matrix.dim();
        (0..d)
            .map(|i| (0..d).map(|j| self.matrix.get(i, j)).collect())
            .collect()
    }
}

/// Normalized pure state over the computational basis (particle 1 on the
/// most significant bit).
#[pyclass(frozen, name = "State")]
struct State {
    inner: CorePureState,
}

#[pymethods]
impl State {
    #[new]
    fn new(n: usize, amplitudes: Vec<Complex<f64>>) -> PyResult<Self> {
        Ok(State {
            inner: CorePureState::new(n, amplitudes).map_err(value_err)?,
        })
    }

    /// GHZ-type state `(|z> + branch e^{i sum z_i phi_i} |-z>) / sqrt(2)`.
    #[staticmethod]
    fn ghz(pattern: Vec<i8>, phases: Vec<f64>, branch: i8) -> PyResult<Self> {
        Ok(State {
            inner: bellviol::ghz_state(&parse_pattern(pattern)?, &phases, parse_branch(branch)?)
                .map_err(value_err)?,
        })
    }

    /// Product of per-particle qubit states given as (up, down) amplitudes.
    #[staticmethod]
    fn product(factors: Vec<(Complex<f64>, Complex<f64>)>) -> PyResult<Self> {
        let qubits: Vec<bellviol::QubitState> = factors
            .into_iter()
            .map(|(up, down)| bellviol::QubitState::new(up, down))
            .collect::<Result<_, _>>()
            .map_err(value_err)?;
        Ok(State {
            inner: bellviol::product_state(&qubits).map_err(value_err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(State {
            inner: CorePureState::from_json(text).map_err(value_err)?,
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn amplitudes(&self) -> Vec<Complex<f64>> {
        self.inner.amplitudes().entries().to_vec()
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    /// Norm distance to another state after fixing both global phases.
    fn distance_up_to_phase(&self, other: &State) -> PyResult<f64> {
        self.inner
            .distance_up_to_phase(&other.inner)
            .map_err(value_err)
    }
}

/// Correlation of `sigma(phi_1) x ... x sigma(phi_N)` via the pattern-pair
/// closed form.
#[pyfunction(name = "correlation_closed")]
fn py_correlation_closed(state: &State, angles: Vec<f64>) -> PyResult<f64> {
    let q = CorrelationQuery::new(state.inner.clone(), angles).map_err(value_err)?;
    correlation_closed(&q).map_err(value_err)
}

/// Same correlation via the dense operator (the oracle).
#[pyfunction(name = "correlation_direct")]
fn py_correlation_direct(state: &State, angles: Vec<f64>) -> PyResult<f64> {
    let q = CorrelationQuery::new(state.inner.clone(), angles).map_err(value_err)?;
    correlation_direct(&q).map_err(value_err)
}

/// Both sides of `2 sum*_z cos(z . gamma) = 2^N prod cos(gamma_i)`.
#[pyfunction(name = "starred_cos_identity")]
fn py_starred_cos_identity(gammas: Vec<f64>) -> (f64, f64) {
    starred_cos_identity(&gammas)
}

/// Structural test for the maximal-violation form; returns a dict with the
/// residuals and the overall verdict.
#[pyfunction(name = "check_max_violation_form")]
#[pyo3(signature = (state, phases, tolerance=1e-8))]
fn py_check_max_violation_form<'py>(
    py: Python<'py>,
    state: &State,
    phases: Vec<f64>,
    tolerance: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let report =
        bellviol::check_max_violation_form(&state.inner, &phases, tolerance).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("pass", report.pass)?;
    out.set_item("max_magnitude_residual", report.max_magnitude_residual)?;
    out.set_item("max_phase_residual", report.max_phase_residual)?;
    out.set_item("parity_consistent", report.parity_consistent)?;
    Ok(out)
}

/// Multi-start angle search for the maximal violation; returns a dict with
/// the best value, angles, and the extreme eigenstate.
#[pyfunction(name = "optimize_violation")]
#[pyo3(signature = (n, seed=0, budget=640))]
fn py_optimize_violation<'py>(
    py: Python<'py>,
    n: usize,
    seed: u64,
    budget: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let outcome = optimize_violation(n, seed, budget).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("value", outcome.value)?;
    out.set_item("reached_target", outcome.reached_target)?;
    out.set_item("phi", outcome.spec.settings().phis())?;
    out.set_item("phi_prime", outcome.spec.settings().phi_primes())?;
    out.set_item("signs", outcome.spec.signs().map(|s| s.to_i8()))?;
    out.set_item(
        "pairing",
        outcome
            .spec
            .pairing()
            .iter()
            .map(|p| p.name())
            .collect::<Vec<_>>(),
    )?;
    out.set_item(
        "state",
        State {
            inner: outcome.state,
        }
        .into_pyobject(py)?,
    )?;
    out.set_item("form_pass", outcome.form.pass)?;
    Ok(out)
}

/// Verifies the four-operator contradiction at the given base phases;
/// returns a dict with the pass flag and worst residual.
#[pyfunction(name = "ghz_theorem_check")]
fn py_ghz_theorem_check<'py>(py: Python<'py>, phases: [f64; 3]) -> PyResult<Bound<'py, PyDict>> {
    let report = bellviol::ghz_theorem_check(&phases).map_err(value_err)?;
    let out = PyDict::new(py);
    out.set_item("pass", report.pass)?;
    out.set_item("residual", report.residual)?;
    out.set_item("tolerance", report.tolerance)?;
    out.set_item("witness", report.witness)?;
    Ok(out)
}

#[pymodule]
fn bellviol_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Settings>()?;
    m.add_class::<Spec>()?;
    m.add_class::<BellOperator>()?;
    m.add_class::<State>()?;
    m.add_function(wrap_pyfunction!(py_correlation_closed, m)?)?;
    m.add_function(wrap_pyfunction!(py_correlation_direct, m)?)?;
    m.add_function(wrap_pyfunction!(py_starred_cos_identity, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_max_violation_form, m)?)?;
    m.add_function(wrap_pyfunction!(py_optimize_violation, m)?)?;
    m.add_function(wrap_pyfunction!(py_ghz_theorem_check, m)?)?;
    Ok(())
}
