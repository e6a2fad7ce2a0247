//! The qubit: Bloch functions, the cross-product Zeno time and the Zeno flow
//! on the Bloch sphere.
//!
//! Coordinates are taken in the eigenbasis of `sigma_z` with the matrices in
//! their usual form, `sigma_z = diag(1, -1)`, so that the Bloch functions
//!
//! ```text
//! u = |z1|^2 + |z2|^2        x = 2 Re(conj(z1) z2)
//! z = |z1|^2 - |z2|^2        y = 2 Im(conj(z1) z2)
//! ```
//!
//! are exactly `f_I, f_{sigma_x}, f_{sigma_y}, f_{sigma_z}` and `e1` sits on the
//! North Pole `z = +1`. Labelling the basis by `sigma_z e_j = (-1)^j e_j` would
//! flip the sign of the matrix `sigma_z` relative to the function `z`.

use ndarray::array;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, HermitianOperator, Projector, State, VARIANCE_FLOOR};
use crate::zeno;
use crate::C64;

/// Relative tolerance on `u^2 = x^2 + y^2 + z^2` for points accepted as flow starts.
pub const CONSTRAINT_TOL: f64 = 1e-8;

pub mod pauli {
    use super::*;

    pub fn identity() -> HermitianOperator {
        HermitianOperator::identity(2)
    }

    pub fn sigma_x() -> HermitianOperator {
        let m = array![[C64::new(0., 0.), C64::new(1., 0.)], [C64::new(1., 0.), C64::new(0., 0.)]];
        HermitianOperator::new(m).expect("Hermitian")
    }

    pub fn sigma_y() -> HermitianOperator {
        let m = array![[C64::new(0., 0.), C64::new(0., -1.)], [C64::new(0., 1.), C64::new(0., 0.)]];
        HermitianOperator::new(m).expect("Hermitian")
    }

    pub fn sigma_z() -> HermitianOperator {
        HermitianOperator::diagonal(&[1.0, -1.0])
    }
}

/// `H = h0 I + h . sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QubitHamiltonian {
    pub h0: f64,
    pub h: [f64; 3],
}

impl QubitHamiltonian {
    pub fn new(h0: f64, h: [f64; 3]) -> Result<Self> {
        if !(h0.is_finite() && h.iter().all(|v| v.is_finite())) {
            return Err(Error::NonFinite("qubit Hamiltonian parameters"));
        }
        Ok(Self { h0, h })
    }

    pub fn operator(&self) -> HermitianOperator {
        let [hx, hy, hz] = self.h;
        let m = array![
            [C64::new(self.h0 + hz, 0.0), C64::new(hx, -hy)],
            [C64::new(hx, hy), C64::new(self.h0 - hz, 0.0)]
        ];
        HermitianOperator::new(m).expect("Hermitian by construction")
    }

    /// `h0 + h_z`: the energy of `e1` under the Zeno Hamiltonian `P H P`.
    pub fn zeno_energy(&self) -> f64 {
        self.h0 + self.h[2]
    }
}

/// Values of the quadratic functions `(u, x, y, z)` at a state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochPoint {
    pub u: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochPoint {
    pub fn new(u: f64, x: f64, y: f64, z: f64) -> Self {
        Self { u, x, y, z }
    }

    pub fn north_pole() -> Self {
        Self::new(1.0, 0.0, 0.0, 1.0)
    }

    pub fn vector(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    /// `u^2 - (x^2 + y^2 + z^2)`.
    pub fn constraint_residual(&self) -> f64 {
        self.u * self.u - (self.x * self.x + self.y * self.y + self.z * self.z)
    }

    /// Rejects points off the sphere `u^2 = |x|^2` (relative to `max(1, u^2)`)
    /// or with negative `u`.
    pub fn check_constraint(&self) -> Result<()> {
        let fields = [self.u, self.x, self.y, self.z];
        if !fields.iter().all(|v| v.is_finite()) {
            return Err(Error::NonFinite("Bloch point"));
        }
        let residual = self.constraint_residual();
        if self.u < 0.0 || residual.abs() > CONSTRAINT_TOL * (self.u * self.u).max(1.0) {
            return Err(Error::ConstraintViolation { residual });
        }
        Ok(())
    }

    fn axpy(&self, h: f64, d: &Self) -> Self {
        Self::new(self.u + h * d.u, self.x + h * d.x, self.y + h * d.y, self.z + h * d.z)
    }
}

fn check_qubit(psi: &State) -> Result<()> {
    if psi.dim() == 2 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected: 2, found: psi.dim() })
    }
}

pub fn bloch_map(psi: &State) -> Result<BlochPoint> {
    check_qubit(psi)?;
    let z1 = psi.amplitudes()[0];
    let z2 = psi.amplitudes()[1];
    let cross = z1.conj() * z2;
    Ok(BlochPoint {
        u: z1.norm_sqr() + z2.norm_sqr(),
        x: 2.0 * cross.re,
        y: 2.0 * cross.im,
        z: z1.norm_sqr() - z2.norm_sqr(),
    })
}

/// `f_H = h0 u + h . x`.
pub fn qubit_expectation(hq: &QubitHamiltonian, psi: &State) -> Result<f64> {
    let b = bloch_map(psi)?;
    let [hx, hy, hz] = hq.h;
    Ok(hq.h0 * b.u + hx * b.x + hy * b.y + hz * b.z)
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn norm_sqr3(v: [f64; 3]) -> f64 {
    v.iter().map(|c| c * c).sum()
}

/// `tau_Z^-2 = |h x x|^2 / |x|^2`, independent of `h0` and of the scale of `psi`.
pub fn qubit_zeno_rate_sqr(hq: &QubitHamiltonian, psi: &State) -> Result<f64> {
    psi.nonzero_norm_sqr()?;
    let b = bloch_map(psi)?;
    let x = b.vector();
    Ok(norm_sqr3(cross(hq.h, x)) / norm_sqr3(x))
}

/// `tau_Z` from the cross-product formula; `+inf` below [`VARIANCE_FLOOR`].
pub fn qubit_zeno_time(hq: &QubitHamiltonian, psi: &State) -> Result<f64> {
    let rate = qubit_zeno_rate_sqr(hq, psi)?;
    if rate <= VARIANCE_FLOOR {
        Ok(f64::INFINITY)
    } else {
        Ok(rate.sqrt().recip())
    }
}

/// `P = |e1><e1| = (I + sigma_z) / 2`.
pub fn north_projector() -> Projector {
    Projector::rank_one(&State::basis(2, 0).expect("dimension 2")).expect("rank one")
}

/// Zeno flow on the Bloch variables for `P = (I + sigma_z) / 2`:
///
/// ```text
/// du/dt = 0,  dx/dt = -w y,  dy/dt = w x,  dz/dt = 0,   w = h0 + h_z
/// ```
///
/// This is `X_{f_{H_Z}}` with `f_{H_Z} = (h0 + h_z)(q1^2 + p1^2)` pushed through
/// the Bloch map: `z1 -> exp(-i w t) z1`, so `x + i y -> exp(i w t)(x + i y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZenoFlow {
    angular_velocity: f64,
}

impl ZenoFlow {
    pub fn angular_velocity(&self) -> f64 {
        self.angular_velocity
    }

    pub fn rhs(&self, b: &BlochPoint) -> BlochPoint {
        let w = self.angular_velocity;
        BlochPoint::new(0.0, -w * b.y, w * b.x, 0.0)
    }

    fn rk4_step(&self, b: &BlochPoint, dt: f64) -> BlochPoint {
        let k1 = self.rhs(b);
        let k2 = self.rhs(&b.axpy(0.5 * dt, &k1));
        let k3 = self.rhs(&b.axpy(0.5 * dt, &k2));
        let k4 = self.rhs(&b.axpy(dt, &k3));
        let sum = BlochPoint::new(
            k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u,
            k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x,
            k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y,
            k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z,
        );
        b.axpy(dt / 6.0, &sum)
    }
}

pub fn zeno_flow_generator(hq: &QubitHamiltonian) -> ZenoFlow {
    ZenoFlow { angular_velocity: hq.zeno_energy() }
}

/// `max(1000, ceil(100 |w| |t|))`.
pub fn default_steps(hq: &QubitHamiltonian, t: f64) -> usize {
    let w = hq.zeno_energy().abs();
    let wanted = (100.0 * w * t.abs()).ceil();
    if wanted.is_finite() && wanted > 1000.0 {
        wanted as usize
    } else {
        1000
    }
}

/// RK4 trajectory of the Zeno flow with fixed step `t / steps`; returns
/// `steps + 1` points including the start.
pub fn integrate_zeno_flow(
    hq: &QubitHamiltonian,
    start: &BlochPoint,
    t: f64,
    steps: usize,
) -> Result<Vec<BlochPoint>> {
    start.check_constraint()?;
    if steps == 0 {
        return Err(Error::InvalidArgument("steps must be positive".into()));
    }
    if !t.is_finite() {
        return Err(Error::NonFinite("time"));
    }
    let flow = zeno_flow_generator(hq);
    let dt = t / steps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut b = *start;
    out.push(b);
    for _ in 0..steps {
        b = flow.rk4_step(&b, dt);
        out.push(b);
    }
    Ok(out)
}

/// Survival and phase of `e1` under the Zeno unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrozenCheck {
    pub survival: f64,
    pub phase: C64,
}

/// `<e1| U_Z(t) |e1>` for `P = (I + sigma_z) / 2`: modulus one, phase
/// `exp(-i (h0 + h_z) t)`.
pub fn frozen_state_check(hq: &QubitHamiltonian, t: f64) -> Result<FrozenCheck> {
    let uz = zeno::zeno_limit_unitary(&hq.operator(), &north_projector(), t)?;
    let e1 = State::basis(2, 0)?;
    let amplitude = e1.inner(&State::from_array(uz.dot(e1.amplitudes()))?)?;
    Ok(FrozenCheck { survival: amplitude.norm_sqr(), phase: amplitude })
}

/// Energy variance of `H` in `psi` via the matrix route, for cross-checks.
pub fn matrix_zeno_rate_sqr(hq: &QubitHamiltonian, psi: &State) -> Result<f64> {
    linalg::energy_variance(psi, &hq.operator())
}
