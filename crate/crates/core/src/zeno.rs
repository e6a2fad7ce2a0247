//! Repeated projective measurements and the quantum Zeno limit.
//!
//! Measuring `N` times at intervals `t / N` gives `V_N(t) = (P U(t/N) P)^N`.
//! For bounded `H` this converges to `U_Z(t) = exp(-i H_Z t) P` with the Zeno
//! Hamiltonian `H_Z = P H P`. Convergence is measured in the spectral norm and
//! is generically `O(1/N)`.

use ndarray::Array2;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    self, conjugate_transpose, frobenius_norm, spectral_norm, HermitianOperator, Projector, State,
};
use crate::C64;

/// Max `||P psi0 - psi0||` for a prepared initial state.
pub const PREPARATION_TOL: f64 = 1e-10;
/// Errors at or below this count as an exact Zeno limit.
pub const EXACT_TOL: f64 = 1e-12;

fn check_dims(h: &HermitianOperator, p: &Projector) -> Result<()> {
    if h.dim() == p.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: h.dim(), found: p.dim() })
    }
}

/// Hamiltonian, measurement projector and a prepared state `P psi0 = psi0`.
#[derive(Debug, Clone)]
pub struct ZenoSetup {
    hamiltonian: HermitianOperator,
    projector: Projector,
    initial_state: State,
}

impl ZenoSetup {
    pub fn new(hamiltonian: HermitianOperator, projector: Projector, initial_state: State) -> Result<Self> {
        check_dims(&hamiltonian, &projector)?;
        let projected = projector.apply(&initial_state)?;
        let residual = projected.distance(&initial_state)?;
        if residual > PREPARATION_TOL {
            return Err(Error::NotPrepared { residual });
        }
        Ok(Self { hamiltonian, projector, initial_state })
    }

    pub fn hamiltonian(&self) -> &HermitianOperator {
        &self.hamiltonian
    }

    pub fn projector(&self) -> &Projector {
        &self.projector
    }

    pub fn initial_state(&self) -> &State {
        &self.initial_state
    }

    pub fn product(&self, t: f64, n: usize) -> Result<Array2<C64>> {
        zeno_product(&self.hamiltonian, &self.projector, t, n)
    }

    pub fn limit_unitary(&self, t: f64) -> Result<Array2<C64>> {
        zeno_limit_unitary(&self.hamiltonian, &self.projector, t)
    }

    pub fn convergence_scan(&self, t: f64, n_values: &[usize]) -> Result<Vec<ConvergencePoint>> {
        convergence_scan(&self.hamiltonian, &self.projector, t, n_values)
    }

    pub fn measured_trajectory(&self, t: f64, n: usize, samples: usize) -> Result<ZenoTrajectory> {
        measured_trajectory(self, t, n, samples)
    }
}

/// `V_N(t) = (P exp(-i H t/N) P)^N`.
///
/// Powers of two are formed by repeated squaring, other `N` by accumulating
/// one factor at a time.
pub fn zeno_product(h: &HermitianOperator, p: &Projector, t: f64, n: usize) -> Result<Array2<C64>> {
    check_dims(h, p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("number of measurements N must be at least 1".into()));
    }
    let u = linalg::expm_antihermitian(h, t / n as f64)?;
    let pm = p.matrix();
    let step = pm.dot(u.matrix()).dot(pm);
    if n.is_power_of_two() {
        let mut acc = step;
        for _ in 0..n.trailing_zeros() {
            acc = acc.dot(&acc);
        }
        Ok(acc)
    } else {
        let mut acc = step.clone();
        for _ in 1..n {
            acc = acc.dot(&step);
        }
        Ok(acc)
    }
}

/// `H_Z = P H P`.
pub fn zeno_hamiltonian(h: &HermitianOperator, p: &Projector) -> Result<HermitianOperator> {
    check_dims(h, p)?;
    let pm = p.matrix();
    HermitianOperator::hermitian_part(&pm.dot(h.matrix()).dot(pm))
}

/// `U_Z(t) = exp(-i H_Z t) P`, unitary on the range of `P`.
pub fn zeno_limit_unitary(h: &HermitianOperator, p: &Projector, t: f64) -> Result<Array2<C64>> {
    let hz = zeno_hamiltonian(h, p)?;
    let u = linalg::expm_antihermitian(&hz, t)?;
    Ok(u.matrix().dot(p.matrix()))
}

/// `||P U^dag U P - P||_F`, the failure of `U` to be unitary on the range of `P`.
pub fn subspace_unitarity_defect(u: &Array2<C64>, p: &Projector) -> f64 {
    let pm = p.matrix();
    let gram = pm.dot(&conjugate_transpose(u)).dot(u).dot(pm);
    frobenius_norm(&(gram - pm))
}

/// One row of a convergence scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergencePoint {
    #[serde(rename = "N")]
    pub n: usize,
    pub error_spectral: f64,
    pub error_frobenius: f64,
}

/// `||V_N(t) - U_Z(t)||` for each `N`, in order. `N` values are evaluated in
/// parallel; the output does not depend on scheduling.
pub fn convergence_scan(
    h: &HermitianOperator,
    p: &Projector,
    t: f64,
    n_values: &[usize],
) -> Result<Vec<ConvergencePoint>> {
    if n_values.is_empty() {
        return Err(Error::InvalidArgument("N_values must be non-empty".into()));
    }
    if n_values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("N_values must be strictly ascending".into()));
    }
    let limit = zeno_limit_unitary(h, p, t)?;
    n_values
        .par_iter()
        .map(|&n| {
            let diff = zeno_product(h, p, t, n)? - &limit;
            Ok(ConvergencePoint {
                n,
                error_spectral: spectral_norm(&diff),
                error_frobenius: frobenius_norm(&diff),
            })
        })
        .collect()
}

/// Least-squares slope of `log(error_spectral)` against `log(N)`.
///
/// `None` when every error is at or below [`EXACT_TOL`] (an exact limit) or
/// when fewer than two points are usable.
pub fn fit_log_slope(points: &[ConvergencePoint]) -> Option<f64> {
    let usable: Vec<(f64, f64)> = points
        .iter()
        .filter(|pt| pt.error_spectral > EXACT_TOL)
        .map(|pt| ((pt.n as f64).ln(), pt.error_spectral.ln()))
        .collect();
    if usable.len() < 2 {
        return None;
    }
    let m = usable.len() as f64;
    let mx = usable.iter().map(|v| v.0).sum::<f64>() / m;
    let my = usable.iter().map(|v| v.1).sum::<f64>() / m;
    let sxy: f64 = usable.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = usable.iter().map(|(x, _)| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// Whether errors shrink along the ladder, allowing each step to grow by
/// at most `slack` (relative) and ignoring errors already below [`EXACT_TOL`].
pub fn is_monotone_within(points: &[ConvergencePoint], slack: f64) -> bool {
    points.windows(2).all(|w| {
        let (a, b) = (w[0].error_spectral, w[1].error_spectral);
        b <= EXACT_TOL || b <= a * (1.0 + slack)
    })
}

/// Sampled post-measurement evolution `psi_t^(N) = V_N(t) psi0`.
#[derive(Debug, Clone, Serialize)]
pub struct ZenoTrajectory {
    pub times: Vec<f64>,
    #[serde(skip)]
    pub states: Vec<State>,
    pub survival_probs: Vec<f64>,
    #[serde(rename = "N")]
    pub n: usize,
}

/// States after every `N / samples` measurements, at times `k t / samples`
/// for `k = 0..=samples`. Survival is `||psi||^2`, which shrinks as
/// measurements discard amplitude. `samples` must divide `N` so that every
/// sample falls right after a completed measurement.
pub fn measured_trajectory(setup: &ZenoSetup, t: f64, n: usize, samples: usize) -> Result<ZenoTrajectory> {
    if n == 0 {
        return Err(Error::InvalidArgument("number of measurements N must be at least 1".into()));
    }
    if samples == 0 || n % samples != 0 {
        return Err(Error::InvalidArgument(format!(
            "samples ({samples}) must divide N ({n}); choose a divisor of N so each sample \
             follows a completed measurement"
        )));
    }
    let per_sample = n / samples;
    let dt = t / n as f64;
    let u = linalg::expm_antihermitian(setup.hamiltonian(), dt)?;
    let pm = setup.projector().matrix();
    let step = pm.dot(u.matrix()).dot(pm);

    let mut psi = setup.initial_state().amplitudes().clone();
    let mut times = Vec::with_capacity(samples + 1);
    let mut states = Vec::with_capacity(samples + 1);
    let mut survival_probs = Vec::with_capacity(samples + 1);
    for k in 0..=samples {
        if k > 0 {
            for _ in 0..per_sample {
                psi = step.dot(&psi);
            }
        }
        let state = State::from_array(psi.clone())?;
        times.push(t * k as f64 / samples as f64);
        survival_probs.push(state.norm_sqr());
        states.push(state);
    }
    Ok(ZenoTrajectory { times, states, survival_probs, n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sigma_x() -> HermitianOperator {
        HermitianOperator::new(array![[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]]).unwrap()
    }

    fn p_e1() -> Projector {
        Projector::rank_one(&State::basis(2, 0).unwrap()).unwrap()
    }

    fn max_abs_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
        a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn sigma_x_product_is_cos_power() {
        for &n in &[1usize, 3, 4, 7, 16] {
            let v = zeno_product(&sigma_x(), &p_e1(), 1.3, n).unwrap();
            let expected = p_e1().matrix().mapv(|z| z * (1.3 / n as f64).cos().powi(n as i32));
            assert!(max_abs_diff(&v, &expected) < 1e-14, "N = {n}");
        }
    }

    #[test]
    fn no_measurement_is_free_evolution() {
        let h = HermitianOperator::new(array![
            [c(0.5, 0.), c(0.2, -0.3)],
            [c(0.2, 0.3), c(-1.0, 0.)]
        ])
        .unwrap();
        let free = linalg::expm_antihermitian(&h, 0.8).unwrap();
        for &n in &[1usize, 5, 8] {
            let v = zeno_product(&h, &Projector::identity(2), 0.8, n).unwrap();
            assert!(max_abs_diff(&v, free.matrix()) < 1e-13);
        }
    }

    #[test]
    fn commuting_case_is_n_independent() {
        let h = HermitianOperator::diagonal(&[1.0, -1.0]);
        let p = p_e1();
        let once = p.matrix().dot(linalg::expm_antihermitian(&h, 2.0).unwrap().matrix()).dot(p.matrix());
        for &n in &[1usize, 2, 5, 64] {
            let v = zeno_product(&h, &p, 2.0, n).unwrap();
            assert!(max_abs_diff(&v, &once) < 1e-13);
        }
    }

    #[test]
    fn zero_measurements_rejected() {
        assert!(zeno_product(&sigma_x(), &p_e1(), 1.0, 0).is_err());
    }

    #[test]
    fn zeno_hamiltonian_examples() {
        let hz = zeno_hamiltonian(&sigma_x(), &p_e1()).unwrap();
        assert!(hz.matrix().iter().all(|z| z.norm() == 0.0));
        let h = sigma_x();
        assert_eq!(zeno_hamiltonian(&h, &Projector::identity(2)).unwrap(), h);
    }

    #[test]
    fn zeno_limit_examples() {
        let u = zeno_limit_unitary(&sigma_x(), &p_e1(), 4.0).unwrap();
        assert!(max_abs_diff(&u, p_e1().matrix()) < 1e-15);
        let h = HermitianOperator::new(array![[c(0.3, 0.), c(1., 2.)], [c(1., -2.), c(-4., 0.)]]).unwrap();
        let u0 = zeno_limit_unitary(&h, &p_e1(), 0.0).unwrap();
        assert!(max_abs_diff(&u0, p_e1().matrix()) < 1e-15);
    }

    #[test]
    fn scan_rejects_bad_ladders() {
        assert!(convergence_scan(&sigma_x(), &p_e1(), 1.0, &[]).is_err());
        assert!(convergence_scan(&sigma_x(), &p_e1(), 1.0, &[4, 2]).is_err());
    }

    #[test]
    fn scan_sigma_x_halves_error() {
        let ladder: Vec<usize> = (1..=10).map(|k| 1usize << k).collect();
        let scan = convergence_scan(&sigma_x(), &p_e1(), 1.0, &ladder).unwrap();
        for pt in &scan {
            let exact = ((1.0 / pt.n as f64).cos().powi(pt.n as i32) - 1.0).abs();
            assert!((pt.error_spectral - exact).abs() < 1e-13);
            // Rank one: spectral and Frobenius agree.
            assert!((pt.error_frobenius - exact).abs() < 1e-13);
        }
        let ratio = scan[8].error_spectral / scan[9].error_spectral;
        assert!((ratio - 2.0).abs() < 1e-2);
        let slope = fit_log_slope(&scan).unwrap();
        assert!((slope + 1.0).abs() < 0.05, "slope {slope}");
        assert!(is_monotone_within(&scan, 0.2));
    }

    #[test]
    fn exact_scan_has_no_slope() {
        let h = HermitianOperator::diagonal(&[1.0, -1.0]);
        let scan = convergence_scan(&h, &p_e1(), 1.0, &[2, 4, 8]).unwrap();
        assert!(scan.iter().all(|pt| pt.error_spectral <= EXACT_TOL));
        assert_eq!(fit_log_slope(&scan), None);
    }

    #[test]
    fn setup_requires_preparation() {
        let psi = State::basis(2, 1).unwrap();
        assert!(matches!(
            ZenoSetup::new(sigma_x(), p_e1(), psi),
            Err(Error::NotPrepared { .. })
        ));
    }

    #[test]
    fn trajectory_sigma_x() {
        let setup = ZenoSetup::new(sigma_x(), p_e1(), State::basis(2, 0).unwrap()).unwrap();
        let traj = setup.measured_trajectory(1.0, 100, 10).unwrap();
        assert_eq!(traj.times.len(), 11);
        let last = *traj.survival_probs.last().unwrap();
        assert!((last - 0.01f64.cos().powi(200)).abs() < 1e-13);
        assert!((last - 0.990).abs() < 1e-3);
        assert!(setup.measured_trajectory(1.0, 100, 7).is_err());
        assert!(setup.measured_trajectory(1.0, 0, 1).is_err());
    }

    #[test]
    fn single_measurement_reduces_to_survival_probability() {
        let h = HermitianOperator::new(array![[c(0.3, 0.), c(1., 2.)], [c(1., -2.), c(-4., 0.)]]).unwrap();
        let e1 = State::basis(2, 0).unwrap();
        let setup = ZenoSetup::new(h.clone(), p_e1(), e1.clone()).unwrap();
        let traj = setup.measured_trajectory(0.7, 1, 1).unwrap();
        let p = linalg::survival_probability(&e1, &h, 0.7).unwrap();
        assert!((traj.survival_probs[1] - p).abs() < 1e-14);
    }
}
