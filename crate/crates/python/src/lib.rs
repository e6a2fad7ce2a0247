//! Python bindings for the `qzeno` core crate.
//!
//! States are lists of complex numbers and operators are lists of rows.
//! Validation failures raise `ValueError`.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qzeno::{geometry, linalg, qubit, zeno, HermitianOperator, Projector, State};

type Matrix = Vec<Vec<C64>>;

fn value_error(e: qzeno::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Square matrix from row lists.
pub fn matrix_from_rows(rows: &[Vec<C64>]) -> qzeno::Result<Array2<C64>> {
    let n = rows.len();
    if n == 0 {
        return Err(qzeno::Error::EmptyDimension);
    }
    let mut m = Array2::zeros((n, n));
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(qzeno::Error::NotSquare { rows: n, cols: row.len() });
        }
        for (j, &z) in row.iter().enumerate() {
            m[[i, j]] = z;
        }
    }
    Ok(m)
}

pub fn rows_from_matrix(m: &Array2<C64>) -> Matrix {
    m.outer_iter().map(|row| row.to_vec()).collect()
}

fn hermitian(rows: Matrix) -> PyResult<HermitianOperator> {
    matrix_from_rows(&rows).and_then(HermitianOperator::new).map_err(value_error)
}

fn projector(rows: Matrix) -> PyResult<Projector> {
    matrix_from_rows(&rows).and_then(Projector::new).map_err(value_error)
}

fn state(amplitudes: Vec<C64>) -> PyResult<State> {
    State::new(amplitudes).map_err(value_error)
}

fn amplitudes(psi: &State) -> Vec<C64> {
    psi.amplitudes().to_vec()
}

/// Qubit Hamiltonian `h0 I + h . sigma`.
#[pyclass(name = "QubitHamiltonian", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyQubitHamiltonian {
    inner: qubit::QubitHamiltonian,
}

#[pymethods]
impl PyQubitHamiltonian {
    #[new]
    fn new(h0: f64, hx: f64, hy: f64, hz: f64) -> PyResult<Self> {
        let inner = qubit::QubitHamiltonian::new(h0, [hx, hy, hz]).map_err(value_error)?;
        Ok(Self { inner })
    }

    #[getter]
    fn h0(&self) -> f64 {
        self.inner.h0
    }

    #[getter]
    fn h(&self) -> (f64, f64, f64) {
        let [x, y, z] = self.inner.h;
        (x, y, z)
    }

    fn operator(&self) -> Matrix {
        rows_from_matrix(self.inner.operator().matrix())
    }

    /// `h0 + h_z`, the angular velocity of the Zeno flow.
    fn zeno_energy(&self) -> f64 {
        self.inner.zeno_energy()
    }

    fn __repr__(&self) -> String {
        let [x, y, z] = self.inner.h;
        format!("QubitHamiltonian(h0={}, hx={x}, hy={y}, hz={z})", self.inner.h0)
    }
}

/// Point `(u, x, y, z)` in the image of the Bloch map.
#[pyclass(name = "BlochPoint", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyBlochPoint {
    inner: qubit::BlochPoint,
}

#[pymethods]
impl PyBlochPoint {
    #[new]
    fn new(u: f64, x: f64, y: f64, z: f64) -> Self {
        Self { inner: qubit::BlochPoint::new(u, x, y, z) }
    }

    #[staticmethod]
    fn north_pole() -> Self {
        Self { inner: qubit::BlochPoint::north_pole() }
    }

    #[getter]
    fn u(&self) -> f64 {
        self.inner.u
    }

    #[getter]
    fn x(&self) -> f64 {
        self.inner.x
    }

    #[getter]
    fn y(&self) -> f64 {
        self.inner.y
    }

    #[getter]
    fn z(&self) -> f64 {
        self.inner.z
    }

    /// `|x^2 + y^2 + z^2 - u^2|`.
    fn constraint_residual(&self) -> f64 {
        self.inner.constraint_residual()
    }

    fn as_tuple(&self) -> (f64, f64, f64, f64) {
        let b = self.inner;
        (b.u, b.x, b.y, b.z)
    }

    fn __repr__(&self) -> String {
        let b = self.inner;
        format!("BlochPoint(u={}, x={}, y={}, z={})", b.u, b.x, b.y, b.z)
    }
}

#[pyfunction]
fn sigma_x() -> Matrix {
    rows_from_matrix(qubit::pauli::sigma_x().matrix())
}

#[pyfunction]
fn sigma_y() -> Matrix {
    rows_from_matrix(qubit::pauli::sigma_y().matrix())
}

#[pyfunction]
fn sigma_z() -> Matrix {
    rows_from_matrix(qubit::pauli::sigma_z().matrix())
}

/// `exp(-i H t)`.
#[pyfunction]
fn expm_antihermitian(h: Matrix, t: f64) -> PyResult<Matrix> {
    let u = linalg::expm_antihermitian(&hermitian(h)?, t).map_err(value_error)?;
    Ok(rows_from_matrix(u.matrix()))
}

#[pyfunction]
fn evolve(psi0: Vec<C64>, h: Matrix, t: f64) -> PyResult<Vec<C64>> {
    let psi = linalg::evolve(&state(psi0)?, &hermitian(h)?, t).map_err(value_error)?;
    Ok(amplitudes(&psi))
}

#[pyfunction]
fn survival_amplitude(psi0: Vec<C64>, h: Matrix, t: f64) -> PyResult<C64> {
    linalg::survival_amplitude(&state(psi0)?, &hermitian(h)?, t).map_err(value_error)
}

#[pyfunction]
fn survival_probability(psi0: Vec<C64>, h: Matrix, t: f64) -> PyResult<f64> {
    linalg::survival_probability(&state(psi0)?, &hermitian(h)?, t).map_err(value_error)
}

#[pyfunction]
fn energy_variance(psi: Vec<C64>, h: Matrix) -> PyResult<f64> {
    linalg::energy_variance(&state(psi)?, &hermitian(h)?).map_err(value_error)
}

#[pyfunction]
fn zeno_time(psi0: Vec<C64>, h: Matrix) -> PyResult<f64> {
    linalg::zeno_time(&state(psi0)?, &hermitian(h)?).map_err(value_error)
}

#[pyfunction]
fn short_time_coefficient(psi0: Vec<C64>, h: Matrix) -> PyResult<f64> {
    linalg::short_time_coefficient(&state(psi0)?, &hermitian(h)?).map_err(value_error)
}

/// `<psi|A|psi>`.
#[pyfunction]
fn expectation(a: Matrix, psi: Vec<C64>) -> PyResult<f64> {
    geometry::QuadraticFunction::new(hermitian(a)?).evaluate(&state(psi)?).map_err(value_error)
}

/// Differential of `<psi|A|psi>` as `[dq_1..dq_n, dp_1..dp_n]`.
#[pyfunction]
fn differential(a: Matrix, psi: Vec<C64>) -> PyResult<Vec<f64>> {
    let f = geometry::QuadraticFunction::new(hermitian(a)?);
    let df = geometry::differential(&f, &state(psi)?).map_err(value_error)?;
    Ok(df.components().to_vec())
}

#[pyfunction]
fn poisson_bracket(a: Matrix, b: Matrix, psi: Vec<C64>) -> PyResult<f64> {
    let fa = geometry::QuadraticFunction::new(hermitian(a)?);
    let fb = geometry::QuadraticFunction::new(hermitian(b)?);
    geometry::poisson_bracket(&fa, &fb, &state(psi)?).map_err(value_error)
}

#[pyfunction]
fn jordan_bracket(a: Matrix, b: Matrix, psi: Vec<C64>) -> PyResult<f64> {
    let fa = geometry::QuadraticFunction::new(hermitian(a)?);
    let fb = geometry::QuadraticFunction::new(hermitian(b)?);
    geometry::jordan_bracket(&fa, &fb, &state(psi)?).map_err(value_error)
}

/// `<psi|A|psi> / <psi|psi>`.
#[pyfunction]
fn homogeneous_expectation(a: Matrix, psi: Vec<C64>) -> PyResult<f64> {
    geometry::homogeneous_expectation(&hermitian(a)?, &state(psi)?).map_err(value_error)
}

#[pyfunction]
fn projective_metric_length(h: Matrix, psi: Vec<C64>) -> PyResult<f64> {
    geometry::projective_metric_length(&hermitian(h)?, &state(psi)?).map_err(value_error)
}

/// `P H P`.
#[pyfunction]
fn zeno_hamiltonian(h: Matrix, p: Matrix) -> PyResult<Matrix> {
    let hz = zeno::zeno_hamiltonian(&hermitian(h)?, &projector(p)?).map_err(value_error)?;
    Ok(rows_from_matrix(hz.matrix()))
}

/// `(P exp(-i H t/N) P)^N`.
#[pyfunction]
fn zeno_product(h: Matrix, p: Matrix, t: f64, n: usize) -> PyResult<Matrix> {
    let v = zeno::zeno_product(&hermitian(h)?, &projector(p)?, t, n).map_err(value_error)?;
    Ok(rows_from_matrix(&v))
}

/// `exp(-i P H P t) P`.
#[pyfunction]
fn zeno_limit_unitary(h: Matrix, p: Matrix, t: f64) -> PyResult<Matrix> {
    let u = zeno::zeno_limit_unitary(&hermitian(h)?, &projector(p)?, t).map_err(value_error)?;
    Ok(rows_from_matrix(&u))
}

/// `(N, spectral error, Frobenius error)` for each `N`.
#[pyfunction]
fn convergence_scan(h: Matrix, p: Matrix, t: f64, n_values: Vec<usize>) -> PyResult<Vec<(usize, f64, f64)>> {
    let points = zeno::convergence_scan(&hermitian(h)?, &projector(p)?, t, &n_values).map_err(value_error)?;
    Ok(points.iter().map(|c| (c.n, c.error_spectral, c.error_frobenius)).collect())
}

/// Least-squares slope of `log(error_spectral)` against `log(N)`; `None`
/// when every error is at round-off level.
#[pyfunction]
fn fit_log_slope(points: Vec<(usize, f64, f64)>) -> Option<f64> {
    let points: Vec<_> = points
        .into_iter()
        .map(|(n, error_spectral, error_frobenius)| zeno::ConvergencePoint { n, error_spectral, error_frobenius })
        .collect();
    zeno::fit_log_slope(&points)
}

/// `(times, survival_probs, states)` sampled along `V_N(t) psi0`.
#[pyfunction]
fn measured_trajectory(
    h: Matrix,
    p: Matrix,
    psi0: Vec<C64>,
    t: f64,
    n: usize,
    samples: usize,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<Vec<C64>>)> {
    let setup = zeno::ZenoSetup::new(hermitian(h)?, projector(p)?, state(psi0)?).map_err(value_error)?;
    let traj = setup.measured_trajectory(t, n, samples).map_err(value_error)?;
    let states = traj.states.iter().map(amplitudes).collect();
    Ok((traj.times, traj.survival_probs, states))
}

#[pyfunction]
fn bloch_map(psi: Vec<C64>) -> PyResult<PyBlochPoint> {
    let inner = qubit::bloch_map(&state(psi)?).map_err(value_error)?;
    Ok(PyBlochPoint { inner })
}

#[pyfunction]
fn qubit_zeno_time(hq: &PyQubitHamiltonian, psi: Vec<C64>) -> PyResult<f64> {
    qubit::qubit_zeno_time(&hq.inner, &state(psi)?).map_err(value_error)
}

/// RK4 trajectory of the Zeno flow, `steps + 1` points.
#[pyfunction]
#[pyo3(signature = (hq, start, t, steps=None))]
fn integrate_zeno_flow(
    hq: &PyQubitHamiltonian,
    start: &PyBlochPoint,
    t: f64,
    steps: Option<usize>,
) -> PyResult<Vec<PyBlochPoint>> {
    let steps = steps.unwrap_or_else(|| qubit::default_steps(&hq.inner, t));
    let path = qubit::integrate_zeno_flow(&hq.inner, &start.inner, t, steps).map_err(value_error)?;
    Ok(path.into_iter().map(|inner| PyBlochPoint { inner }).collect())
}

/// `(survival, amplitude)` of `e1` under the Zeno unitary.
#[pyfunction]
fn frozen_state_check(hq: &PyQubitHamiltonian, t: f64) -> PyResult<(f64, C64)> {
    let check = qubit::frozen_state_check(&hq.inner, t).map_err(value_error)?;
    Ok((check.survival, check.phase))
}

#[pymodule]
fn qzeno_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQubitHamiltonian>()?;
    m.add_class::<PyBlochPoint>()?;
    m.add_function(wrap_pyfunction!(sigma_x, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_y, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_z, m)?)?;
    m.add_function(wrap_pyfunction!(expm_antihermitian, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(survival_amplitude, m)?)?;
    m.add_function(wrap_pyfunction!(survival_probability, m)?)?;
    m.add_function(wrap_pyfunction!(energy_variance, m)?)?;
    m.add_function(wrap_pyfunction!(zeno_time, m)?)?;
    m.add_function(wrap_pyfunction!(short_time_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(expectation, m)?)?;
    m.add_function(wrap_pyfunction!(differential, m)?)?;
    m.add_function(wrap_pyfunction!(poisson_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(jordan_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(homogeneous_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(projective_metric_length, m)?)?;
    m.add_function(wrap_pyfunction!(zeno_hamiltonian, m)?)?;
    m.add_function(wrap_pyfunction!(zeno_product, m)?)?;
    m.add_function(wrap_pyfunction!(zeno_limit_unitary, m)?)?;
    m.add_function(wrap_pyfunction!(convergence_scan, m)?)?;
    m.add_function(wrap_pyfunction!(fit_log_slope, m)?)?;
    m.add_function(wrap_pyfunction!(measured_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(bloch_map, m)?)?;
    m.add_function(wrap_pyfunction!(qubit_zeno_time, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_zeno_flow, m)?)?;
    m.add_function(wrap_pyfunction!(frozen_state_check, m)?)?;
    Ok(())
}
