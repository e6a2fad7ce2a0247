//! Real-chart geometry of `C^n`.
//!
//! A state with amplitudes `z_k = q_k + i p_k` is a point of `R^{2n}` with
//! coordinates ordered `(q_1..q_n, p_1..p_n)`. No `1/sqrt(2)` is absorbed in the
//! chart, so the contravariant tensors carry the factors
//!
//! ```text
//! G     =  1/4 sum_k (d/dq_k (x) d/dq_k + d/dp_k (x) d/dp_k)
//! Omega = -1/2 sum_k  d/dq_k  ^  d/dp_k
//! ```
//!
//! With these, expectation values `f_A(psi) = <psi|A|psi>` close into the
//! Lie-Jordan algebra of the observables:
//! `{f_A, f_B} = f_{i(AB-BA)}` and `{f_A, f_B}_+ = f_{(AB+BA)/2}`.

use ndarray::Array1;

use crate::error::{Error, Result};
use crate::linalg::{HermitianOperator, State};
use crate::C64;

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A point of `R^{2n}` in the `(q, p)` chart.
#[derive(Debug, Clone, PartialEq)]
pub struct RealChartPoint {
    coords: Vec<f64>,
}

impl RealChartPoint {
    pub fn from_state(psi: &State) -> Self {
        let z = psi.amplitudes();
        let coords = z.iter().map(|c| c.re).chain(z.iter().map(|c| c.im)).collect();
        Self { coords }
    }

    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "chart point needs an even, positive number of coordinates, got {}",
                coords.len()
            )));
        }
        Ok(Self { coords })
    }

    pub fn to_state(&self) -> State {
        let n = self.dim();
        let amps: Array1<C64> =
            (0..n).map(|k| C64::new(self.coords[k], self.coords[n + k])).collect();
        State::from_array(amps).expect("chart coordinates are finite")
    }

    /// Complex dimension `n`.
    pub fn dim(&self) -> usize {
        self.coords.len() / 2
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// `f_A(psi) = <psi|A|psi> = sum_kl conj(z_k) A_kl z_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticFunction {
    operator: HermitianOperator,
}

impl QuadraticFunction {
    pub fn new(operator: HermitianOperator) -> Self {
        Self { operator }
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn dim(&self) -> usize {
        self.operator.dim()
    }

    pub fn evaluate(&self, psi: &State) -> Result<f64> {
        self.operator.quadratic_form(psi)
    }

    /// `alpha f + beta g = f_{alpha A + beta B}`.
    pub fn linear_combination(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        Ok(Self::new(self.operator.linear_combination(alpha, &other.operator, beta)?))
    }
}

macro_rules! real_2n_vector {
    ($name:ident) => {
        impl $name {
            pub fn new(components: Vec<f64>) -> Result<Self> {
                if components.is_empty() || components.len() % 2 != 0 {
                    return Err(Error::InvalidArgument(format!(
                        "need an even, positive number of components, got {}",
                        components.len()
                    )));
                }
                Ok(Self { components })
            }

            pub fn components(&self) -> &[f64] {
                &self.components
            }

            /// Complex dimension `n`.
            pub fn dim(&self) -> usize {
                self.components.len() / 2
            }

            pub fn q(&self, k: usize) -> f64 {
                self.components[k]
            }

            pub fn p(&self, k: usize) -> f64 {
                self.components[self.dim() + k]
            }

            /// `alpha self + beta other`.
            pub fn combine(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
                check_len(self.components.len(), other.components.len())?;
                Ok(Self {
                    components: self
                        .components
                        .iter()
                        .zip(&other.components)
                        .map(|(a, b)| alpha * a + beta * b)
                        .collect(),
                })
            }
        }
    };
}

/// Covector in the `(dq, dp)` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CotangentVector {
    components: Vec<f64>,
}

/// Vector in the `(d/dq, d/dp)` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    components: Vec<f64>,
}

real_2n_vector!(CotangentVector);
real_2n_vector!(TangentVector);

impl TangentVector {
    /// Pairing `dg(X)`, i.e. the derivative of `g` along `X`.
    pub fn apply(&self, dg: &CotangentVector) -> Result<f64> {
        check_len(self.components.len(), dg.components.len())?;
        Ok(self.components.iter().zip(&dg.components).map(|(a, b)| a * b).sum())
    }

    /// The same vector read as a complex velocity `dz_k/dt = dq_k/dt + i dp_k/dt`.
    pub fn complex_velocity(&self) -> Array1<C64> {
        let n = self.dim();
        (0..n).map(|k| C64::new(self.q(k), self.p(k))).collect()
    }
}

/// `df_A` at `psi`.
///
/// With `w = A z` one has `df/dconj(z_k) = w_k`, hence
/// `df/dq_k = 2 Re w_k` and `df/dp_k = 2 Im w_k`.
pub fn differential(f: &QuadraticFunction, psi: &State) -> Result<CotangentVector> {
    let w = f.operator().apply(psi)?;
    let w = w.amplitudes();
    let components = w
        .iter()
        .map(|c| 2.0 * c.re)
        .chain(w.iter().map(|c| 2.0 * c.im))
        .collect();
    Ok(CotangentVector { components })
}

/// Contravariant metric `G(df, dg)`.
pub fn metric_g(df: &CotangentVector, dg: &CotangentVector) -> Result<f64> {
    check_len(df.components.len(), dg.components.len())?;
    let sum: f64 = df.components.iter().zip(&dg.components).map(|(a, b)| a * b).sum();
    Ok(0.25 * sum)
}

/// Contravariant symplectic tensor `Omega(df, dg) = 1/2 sum_k (df_p dg_q - df_q dg_p)`.
pub fn symplectic_omega(df: &CotangentVector, dg: &CotangentVector) -> Result<f64> {
    check_len(df.components.len(), dg.components.len())?;
    let n = df.dim();
    let sum: f64 = (0..n).map(|k| df.p(k) * dg.q(k) - df.q(k) * dg.p(k)).sum();
    Ok(0.5 * sum)
}

fn check_pair(fa: &QuadraticFunction, fb: &QuadraticFunction) -> Result<()> {
    check_len(fa.dim(), fb.dim())
}

/// `{f_A, f_B}(psi) = Omega(df_A, df_B)`.
pub fn poisson_bracket(fa: &QuadraticFunction, fb: &QuadraticFunction, psi: &State) -> Result<f64> {
    check_pair(fa, fb)?;
    symplectic_omega(&differential(fa, psi)?, &differential(fb, psi)?)
}

/// `{f_A, f_B}_+(psi) = G(df_A, df_B)`.
pub fn jordan_bracket(fa: &QuadraticFunction, fb: &QuadraticFunction, psi: &State) -> Result<f64> {
    check_pair(fa, fb)?;
    metric_g(&differential(fa, psi)?, &differential(fb, psi)?)
}

/// `X_f = Omega(df, .)`: components `dq_k/dt = 1/2 df/dp_k`, `dp_k/dt = -1/2 df/dq_k`.
///
/// For `f = f_H` this is `dz/dt = -i H z`.
pub fn hamiltonian_vector_field(f: &QuadraticFunction, psi: &State) -> Result<TangentVector> {
    let df = differential(f, psi)?;
    let n = df.dim();
    let components = (0..n)
        .map(|k| 0.5 * df.p(k))
        .chain((0..n).map(|k| -0.5 * df.q(k)))
        .collect();
    Ok(TangentVector { components })
}

/// Integrates the flow of `X_f` with classical RK4 and a fixed step `t / steps`.
pub fn integrate_hamiltonian_flow(
    f: &QuadraticFunction,
    psi0: &State,
    t: f64,
    steps: usize,
) -> Result<State> {
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    if !t.is_finite() {
        return Err(Error::NonFinite("time"));
    }
    check_len(f.dim(), psi0.dim())?;
    let dt = t / steps as f64;
    let velocity = |psi: &State| -> Result<Array1<C64>> {
        Ok(hamiltonian_vector_field(f, psi)?.complex_velocity())
    };
    let mut z = psi0.amplitudes().clone();
    for _ in 0..steps {
        let s = |v: &Array1<C64>, h: f64| State::from_array(&z + &v.mapv(|c| c * h));
        let k1 = velocity(&State::from_array(z.clone())?)?;
        let k2 = velocity(&s(&k1, 0.5 * dt)?)?;
        let k3 = velocity(&s(&k2, 0.5 * dt)?)?;
        let k4 = velocity(&s(&k3, dt)?)?;
        let incr = (&k1 + &k2.mapv(|c| c * 2.0) + &k3.mapv(|c| c * 2.0) + &k4).mapv(|c| c * (dt / 6.0));
        z = &z + &incr;
    }
    State::from_array(z)
}

/// `f~_A = <psi|A|psi> / <psi|psi>`, invariant under `psi -> lambda psi`.
pub fn homogeneous_expectation(a: &HermitianOperator, psi: &State) -> Result<f64> {
    let n2 = psi.nonzero_norm_sqr()?;
    Ok(a.quadratic_form(psi)? / n2)
}

/// `df~_A = (df_A - f~_A d||psi||^2) / ||psi||^2`.
pub fn homogeneous_differential(a: &HermitianOperator, psi: &State) -> Result<CotangentVector> {
    let n2 = psi.nonzero_norm_sqr()?;
    let df = differential(&QuadraticFunction::new(a.clone()), psi)?;
    let dnorm = differential(&QuadraticFunction::new(HermitianOperator::identity(psi.dim())), psi)?;
    let mean = a.quadratic_form(psi)? / n2;
    df.combine(1.0 / n2, &dnorm, -mean / n2)
}

/// Conformal metric `G~(psi) = ||psi||^2 G(psi)`.
pub fn conformal_metric(psi: &State, df: &CotangentVector, dg: &CotangentVector) -> Result<f64> {
    check_len(2 * psi.dim(), df.components.len())?;
    Ok(psi.nonzero_norm_sqr()? * metric_g(df, dg)?)
}

/// Conformal symplectic tensor `Omega~(psi) = ||psi||^2 Omega(psi)`.
pub fn conformal_omega(psi: &State, df: &CotangentVector, dg: &CotangentVector) -> Result<f64> {
    check_len(2 * psi.dim(), df.components.len())?;
    Ok(psi.nonzero_norm_sqr()? * symplectic_omega(df, dg)?)
}

/// `G~(df~_H, df~_H)`: the squared length of the Hamiltonian vector field on
/// projective space, equal to the energy variance `(Delta H)^2 = tau_Z^-2`.
pub fn projective_metric_length(h: &HermitianOperator, psi: &State) -> Result<f64> {
    check_len(h.dim(), psi.dim())?;
    let df = homogeneous_differential(h, psi)?;
    conformal_metric(psi, &df, &df)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pauli_x() -> HermitianOperator {
        HermitianOperator::new(array![[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]]).unwrap()
    }

    fn pauli_y() -> HermitianOperator {
        HermitianOperator::new(array![[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]]).unwrap()
    }

    fn pauli_z() -> HermitianOperator {
        HermitianOperator::diagonal(&[1.0, -1.0])
    }

    fn sample_state() -> State {
        State::new(vec![c(0.3, -0.4), c(0.7, 0.2)]).unwrap()
    }

    #[test]
    fn chart_round_trip_is_exact() {
        let psi = State::new(vec![c(0.1, -2.5), c(1e-300, 3.0e10), c(-0.0, 0.5)]).unwrap();
        let point = RealChartPoint::from_state(&psi);
        assert_eq!(point.coords(), &[0.1, 1e-300, -0.0, -2.5, 3.0e10, 0.5]);
        assert_eq!(point.to_state(), psi);
    }

    #[test]
    fn differential_of_norm() {
        let psi = sample_state();
        let d = differential(&QuadraticFunction::new(HermitianOperator::identity(2)), &psi).unwrap();
        assert_eq!(d.components(), &[0.6, 1.4, -0.8, 0.4]);
    }

    #[test]
    fn differential_of_bloch_z() {
        let psi = sample_state();
        let d = differential(&QuadraticFunction::new(pauli_z()), &psi).unwrap();
        // z = q1^2 + p1^2 - q2^2 - p2^2
        assert_eq!(d.components(), &[0.6, -1.4, -0.8, -0.4]);
    }

    #[test]
    fn metric_of_norm_differential_is_norm() {
        let psi = sample_state();
        let d = differential(&QuadraticFunction::new(HermitianOperator::identity(2)), &psi).unwrap();
        assert!((metric_g(&d, &d).unwrap() - psi.norm_sqr()).abs() < 1e-15);
    }

    #[test]
    fn omega_pauli_pair_gives_minus_two_z() {
        let psi = sample_state();
        let dx = differential(&QuadraticFunction::new(pauli_x()), &psi).unwrap();
        let dy = differential(&QuadraticFunction::new(pauli_y()), &psi).unwrap();
        let z = pauli_z().quadratic_form(&psi).unwrap();
        assert!((symplectic_omega(&dx, &dy).unwrap() + 2.0 * z).abs() < 1e-14);
        assert_eq!(symplectic_omega(&dx, &dx).unwrap(), 0.0);
        assert_eq!(symplectic_omega(&dx, &dy).unwrap(), -symplectic_omega(&dy, &dx).unwrap());
    }

    #[test]
    fn jordan_examples() {
        let psi = sample_state();
        let fx = QuadraticFunction::new(pauli_x());
        let fy = QuadraticFunction::new(pauli_y());
        let unit = QuadraticFunction::new(HermitianOperator::identity(2));
        assert!((jordan_bracket(&fx, &fx, &psi).unwrap() - psi.norm_sqr()).abs() < 1e-15);
        assert!(jordan_bracket(&fx, &fy, &psi).unwrap().abs() < 1e-15);
        let fx_val = fx.evaluate(&psi).unwrap();
        assert!((jordan_bracket(&fx, &unit, &psi).unwrap() - fx_val).abs() < 1e-15);
    }

    #[test]
    fn identity_generates_global_phase() {
        let psi = sample_state();
        let x = hamiltonian_vector_field(&QuadraticFunction::new(HermitianOperator::identity(2)), &psi)
            .unwrap();
        let v = x.complex_velocity();
        for k in 0..2 {
            assert!((v[k] - c(0.0, -1.0) * psi.amplitudes()[k]).norm() < 1e-15);
        }
    }

    #[test]
    fn sigma_z_field_at_e1() {
        let e1 = State::basis(2, 0).unwrap();
        let x = hamiltonian_vector_field(&QuadraticFunction::new(pauli_z()), &e1).unwrap();
        // dz1/dt = -i z1 for sigma_z = diag(1, -1).
        assert_eq!(x.components(), &[0.0, 0.0, -1.0, 0.0]);
    }

    #[test]
    fn homogeneous_expectation_examples() {
        let e1 = State::basis(2, 0).unwrap();
        assert_eq!(homogeneous_expectation(&pauli_z(), &e1).unwrap(), 1.0);
        let psi = sample_state();
        let one = homogeneous_expectation(&HermitianOperator::identity(2), &psi).unwrap();
        assert!((one - 1.0).abs() < 1e-15);
        let a = homogeneous_expectation(&pauli_x(), &psi).unwrap();
        let b = homogeneous_expectation(&pauli_x(), &psi.scaled(c(3.0, 0.0))).unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn projective_length_examples() {
        let e1 = State::basis(2, 0).unwrap();
        assert!((projective_metric_length(&pauli_x(), &e1).unwrap() - 1.0).abs() < 1e-15);
        assert!(projective_metric_length(&pauli_z(), &e1).unwrap().abs() < 1e-15);
    }

    #[test]
    fn zero_state_rejected() {
        let zero = State::new(vec![c(0.0, 0.0); 2]).unwrap();
        assert_eq!(homogeneous_expectation(&pauli_x(), &zero).unwrap_err(), Error::ZeroState);
        assert_eq!(projective_metric_length(&pauli_x(), &zero).unwrap_err(), Error::ZeroState);
    }

    #[test]
    fn mismatched_dimensions() {
        let psi = State::basis(3, 0).unwrap();
        assert!(differential(&QuadraticFunction::new(pauli_x()), &psi).is_err());
        let fx = QuadraticFunction::new(pauli_x());
        let f3 = QuadraticFunction::new(HermitianOperator::identity(3));
        assert!(poisson_bracket(&fx, &f3, &psi).is_err());
    }
}
