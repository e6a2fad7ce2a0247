//! Finite-dimensional Hilbert-space kernel.
//!
//! States are plain amplitude vectors; nothing here renormalises behind the
//! caller's back. Formulas that live on projective space divide by `||psi||^2`
//! explicitly.

mod expm;
pub mod norms;

use ndarray::{Array1, Array2};

use crate::error::{Error, Result};
use crate::C64;

pub use expm::expm;
pub use norms::{frobenius_norm, one_norm, spectral_norm, vector_norm};

/// Max allowed `|A_kl - conj(A_lk)|` for a Hermitian operator.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Max allowed `| ||psi||^2 - 1 |` for a state treated as normalized.
pub const NORMALIZED_TOL: f64 = 1e-12;
/// Tolerance on `||P^2 - P||_F`, Hermiticity and `tr P` for projectors.
pub const PROJECTOR_TOL: f64 = 1e-10;
/// Tolerance on `||U^dag U - I||_F`.
pub const UNITARY_TOL: f64 = 1e-10;
/// Energy variances at or below this are treated as zero (infinite Zeno time).
pub const VARIANCE_FLOOR: f64 = 1e-14;
/// Squared norms at or below this are rejected wherever `psi / ||psi||` is needed.
pub const MIN_NORM_SQR: f64 = 1e-14;

fn dagger(m: &Array2<C64>) -> Array2<C64> {
    m.t().mapv(|z| z.conj())
}

fn check_square(m: &Array2<C64>) -> Result<usize> {
    let (rows, cols) = m.dim();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    if rows == 0 {
        return Err(Error::EmptyDimension);
    }
    Ok(rows)
}

fn check_finite_matrix(m: &Array2<C64>, what: &'static str) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}

fn hermiticity_deviation(m: &Array2<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for k in 0..n {
        for l in k..n {
            worst = worst.max((m[[k, l]] - m[[l, k]].conj()).norm());
        }
    }
    worst
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Amplitudes `z_k = <e_k|psi>` of a pure state in a fixed orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    amplitudes: Array1<C64>,
}

impl State {
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        Self::from_array(Array1::from(amplitudes))
    }

    pub fn from_array(amplitudes: Array1<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::EmptyDimension);
        }
        if !amplitudes.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::NonFinite("state amplitudes"));
        }
        Ok(Self { amplitudes })
    }

    /// Basis vector `e_{k+1}` (zero-based `k`) of `C^n`.
    pub fn basis(n: usize, k: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyDimension);
        }
        if k >= n {
            return Err(Error::InvalidArgument(format!(
                "basis index {k} out of range for dimension {n}"
            )));
        }
        let mut amplitudes = Array1::<C64>::zeros(n);
        amplitudes[k] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Array1<C64> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORMALIZED_TOL
    }

    pub fn ensure_normalized(&self) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::NotNormalized { norm_sqr: self.norm_sqr() })
        }
    }

    /// Squared norm, rejecting (near) zero vectors.
    pub fn nonzero_norm_sqr(&self) -> Result<f64> {
        let n2 = self.norm_sqr();
        if n2 > MIN_NORM_SQR {
            Ok(n2)
        } else {
            Err(Error::ZeroState)
        }
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.nonzero_norm_sqr()?.sqrt();
        Ok(self.scaled(C64::new(1.0 / n, 0.0)))
    }

    pub fn scaled(&self, lambda: C64) -> Self {
        Self { amplitudes: self.amplitudes.mapv(|z| z * lambda) }
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &State) -> Result<C64> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn distance(&self, other: &State) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        Ok(vector_norm(&(&self.amplitudes - &other.amplitudes)))
    }
}

/// Dense Hermitian matrix: Hamiltonians and observables.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: Array2<C64>,
}

impl HermitianOperator {
    pub fn new(matrix: Array2<C64>) -> Result<Self> {
        check_square(&matrix)?;
        check_finite_matrix(&matrix, "operator entries")?;
        let deviation = hermiticity_deviation(&matrix);
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(Self { matrix })
    }

    /// Hermitian part `(M + M^dag) / 2` of an arbitrary square matrix.
    pub fn hermitian_part(matrix: &Array2<C64>) -> Result<Self> {
        check_square(matrix)?;
        check_finite_matrix(matrix, "operator entries")?;
        let sym = (matrix + &dagger(matrix)).mapv(|z| z * 0.5);
        Ok(Self { matrix: sym })
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: Array2::eye(n) }
    }

    pub fn zeros(n: usize) -> Self {
        Self { matrix: Array2::zeros((n, n)) }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut matrix = Array2::<C64>::zeros((n, n));
        for (k, &v) in values.iter().enumerate() {
            matrix[[k, k]] = C64::new(v, 0.0);
        }
        Self { matrix }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Array2<C64> {
        self.matrix
    }

    pub fn apply(&self, psi: &State) -> Result<State> {
        check_dim(self.dim(), psi.dim())?;
        Ok(State { amplitudes: self.matrix.dot(psi.amplitudes()) })
    }

    /// `<psi|A|psi>` without any normalisation.
    pub fn quadratic_form(&self, psi: &State) -> Result<f64> {
        let a_psi = self.apply(psi)?;
        Ok(psi.inner(&a_psi)?.re)
    }

    /// `A^2`.
    pub fn square(&self) -> Self {
        Self::hermitian_part(&self.matrix.dot(&self.matrix)).expect("square matrix")
    }

    /// `alpha * self + beta * other`.
    pub fn linear_combination(&self, alpha: f64, other: &Self, beta: f64) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self { matrix: self.matrix.mapv(|z| z * alpha) + other.matrix.mapv(|z| z * beta) })
    }

    /// `i (AB - BA)`, the operator image of the Poisson bracket.
    pub fn lie_product(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        let ab = self.matrix.dot(&other.matrix);
        let ba = other.matrix.dot(&self.matrix);
        Self::hermitian_part(&((ab - ba).mapv(|z| z * C64::i())))
    }

    /// `(AB + BA) / 2`, the operator image of the Jordan bracket.
    pub fn jordan_product(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        let ab = self.matrix.dot(&other.matrix);
        let ba = other.matrix.dot(&self.matrix);
        Self::hermitian_part(&((ab + ba).mapv(|z| z * 0.5)))
    }

    /// `||AB - BA||_F`.
    pub fn commutator_norm(&self, other: &Array2<C64>) -> Result<f64> {
        check_dim(self.dim(), other.nrows())?;
        let ab = self.matrix.dot(other);
        let ba = other.dot(&self.matrix);
        Ok(frobenius_norm(&(ab - ba)))
    }

    pub fn spectral_norm(&self) -> f64 {
        spectral_norm(&self.matrix)
    }
}

/// Orthogonal projection onto a subspace of `C^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: Array2<C64>,
    rank: usize,
}

impl Projector {
    pub fn new(matrix: Array2<C64>) -> Result<Self> {
        let n = check_square(&matrix)?;
        check_finite_matrix(&matrix, "projector entries")?;
        let herm = hermiticity_deviation(&matrix);
        if herm > PROJECTOR_TOL {
            return Err(Error::InvalidProjector(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let idem = frobenius_norm(&(matrix.dot(&matrix) - &matrix));
        if idem > PROJECTOR_TOL {
            return Err(Error::InvalidProjector(format!(
                "not idempotent (||P^2 - P||_F = {idem:e})"
            )));
        }
        let trace: C64 = matrix.diag().iter().sum();
        let rank = trace.re.round();
        if (trace.re - rank).abs() > PROJECTOR_TOL || trace.im.abs() > PROJECTOR_TOL {
            return Err(Error::InvalidProjector(format!("trace {trace} is not an integer")));
        }
        let rank = rank as usize;
        if rank == 0 || rank > n {
            return Err(Error::InvalidProjector(format!(
                "rank {rank} outside 1..={n}"
            )));
        }
        Ok(Self { matrix, rank })
    }

    /// `sum_k |v_k><v_k|` from a list of (nearly) orthonormal vectors.
    ///
    /// Vectors whose Gram matrix is within `1e-8` of the identity are
    /// re-orthonormalised by Gram-Schmidt; anything further off is rejected.
    pub fn from_basis(vectors: &[State]) -> Result<Self> {
        let first = vectors
            .first()
            .ok_or_else(|| Error::InvalidProjector("empty basis".into()))?;
        let n = first.dim();
        for v in vectors {
            check_dim(n, v.dim())?;
        }
        let mut gram_dev = 0.0_f64;
        for (i, a) in vectors.iter().enumerate() {
            for (j, b) in vectors.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                gram_dev = gram_dev.max((a.inner(b)? - C64::new(target, 0.0)).norm());
            }
        }
        if gram_dev > 1e-8 {
            return Err(Error::InvalidProjector(format!(
                "basis is not orthonormal (Gram deviation {gram_dev:e})"
            )));
        }
        let mut ortho: Vec<Array1<C64>> = Vec::with_capacity(vectors.len());
        for v in vectors {
            let mut w = v.amplitudes().clone();
            for u in &ortho {
                let overlap: C64 = u.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum();
                w = &w - &u.mapv(|x| x * overlap);
            }
            let nw = vector_norm(&w);
            ortho.push(w / C64::new(nw, 0.0));
        }
        let mut matrix = Array2::<C64>::zeros((n, n));
        for u in &ortho {
            for k in 0..n {
                for l in 0..n {
                    matrix[[k, l]] += u[k] * u[l].conj();
                }
            }
        }
        Self::new(matrix)
    }

    /// `|psi><psi| / ||psi||^2`.
    pub fn rank_one(psi: &State) -> Result<Self> {
        Self::from_basis(&[psi.normalized()?])
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: Array2::eye(n), rank: n }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn apply(&self, psi: &State) -> Result<State> {
        check_dim(self.dim(), psi.dim())?;
        Ok(State { amplitudes: self.matrix.dot(psi.amplitudes()) })
    }

    pub fn as_operator(&self) -> HermitianOperator {
        HermitianOperator { matrix: self.matrix.clone() }
    }
}

/// Square matrix `U` with `U^dag U = I`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryMatrix {
    matrix: Array2<C64>,
}

impl UnitaryMatrix {
    pub fn new(matrix: Array2<C64>) -> Result<Self> {
        let n = check_square(&matrix)?;
        check_finite_matrix(&matrix, "unitary entries")?;
        let deviation = frobenius_norm(&(dagger(&matrix).dot(&matrix) - Array2::<C64>::eye(n)));
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { matrix })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> Array2<C64> {
        self.matrix
    }

    pub fn apply(&self, psi: &State) -> Result<State> {
        check_dim(self.dim(), psi.dim())?;
        Ok(State { amplitudes: self.matrix.dot(psi.amplitudes()) })
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self { matrix: self.matrix.dot(&other.matrix) })
    }

    pub fn unitarity_defect(&self) -> f64 {
        frobenius_norm(&(dagger(&self.matrix).dot(&self.matrix) - Array2::<C64>::eye(self.dim())))
    }
}

pub(crate) fn conjugate_transpose(m: &Array2<C64>) -> Array2<C64> {
    dagger(m)
}

/// `exp(-i H t)`.
pub fn expm_antihermitian(h: &HermitianOperator, t: f64) -> Result<UnitaryMatrix> {
    if !t.is_finite() {
        return Err(Error::NonFinite("time"));
    }
    let generator = h.matrix().mapv(|z| z * C64::new(0.0, -t));
    UnitaryMatrix::new(expm(&generator))
}

/// `exp(-i H t) psi0`. Linear, so any state is accepted.
pub fn evolve(psi0: &State, h: &HermitianOperator, t: f64) -> Result<State> {
    check_dim(h.dim(), psi0.dim())?;
    expm_antihermitian(h, t)?.apply(psi0)
}

/// `A(t) = <psi0| exp(-i H t) |psi0>` for a normalized `psi0`.
pub fn survival_amplitude(psi0: &State, h: &HermitianOperator, t: f64) -> Result<C64> {
    psi0.ensure_normalized()?;
    let psi_t = evolve(psi0, h, t)?;
    psi0.inner(&psi_t)
}

/// `p(t) = |A(t)|^2`.
pub fn survival_probability(psi0: &State, h: &HermitianOperator, t: f64) -> Result<f64> {
    Ok(survival_amplitude(psi0, h, t)?.norm_sqr())
}

/// `(Delta H)^2 = <H^2>/||psi||^2 - (<H>/||psi||^2)^2`, clamped at zero.
pub fn energy_variance(psi: &State, h: &HermitianOperator) -> Result<f64> {
    check_dim(h.dim(), psi.dim())?;
    let n2 = psi.nonzero_norm_sqr()?;
    let h_psi = h.apply(psi)?;
    let mean = psi.inner(&h_psi)?.re / n2;
    let second = h_psi.norm_sqr() / n2;
    Ok((second - mean * mean).max(0.0))
}

/// Zeno time `tau_Z = 1 / Delta H`; `+inf` when the variance is below
/// [`VARIANCE_FLOOR`]. The state need not be normalized.
pub fn zeno_time(psi0: &State, h: &HermitianOperator) -> Result<f64> {
    let var = energy_variance(psi0, h)?;
    if var <= VARIANCE_FLOOR {
        Ok(f64::INFINITY)
    } else {
        Ok(var.sqrt().recip())
    }
}

const RICHARDSON_LEVELS: usize = 6;
const RICHARDSON_T0: f64 = 0.25;

/// Coefficient `c` of `p(t) = 1 - c t^2 + O(t^4)`, estimated numerically.
///
/// Samples `g(t) = (1 - p(t)) / t^2` on `t_k = t_0 / 2^k` with `t_0` set by the
/// spread of `H` around its mean, then runs a Richardson table in `t^2`.
/// Fails if the last two diagonal entries disagree, i.e. the data do not look
/// like a power series in `t^2`.
pub fn short_time_coefficient(psi0: &State, h: &HermitianOperator) -> Result<f64> {
    psi0.ensure_normalized()?;
    check_dim(h.dim(), psi0.dim())?;
    let mean = h.quadratic_form(psi0)?;
    let shifted = h.linear_combination(1.0, &HermitianOperator::identity(h.dim()), -mean)?;
    let spread = frobenius_norm(shifted.matrix());
    if spread == 0.0 {
        return Ok(0.0);
    }
    let t0 = RICHARDSON_T0 / spread;

    let mut table: Vec<Vec<f64>> = Vec::with_capacity(RICHARDSON_LEVELS);
    for k in 0..RICHARDSON_LEVELS {
        let t = t0 / f64::from(1u32 << k);
        let g = (1.0 - survival_probability(psi0, h, t)?) / (t * t);
        let mut row = vec![g];
        for j in 1..=k {
            let factor = 4f64.powi(j as i32) - 1.0;
            let prev = row[j - 1];
            row.push(prev + (prev - table[k - 1][j - 1]) / factor);
        }
        table.push(row);
    }
    let last = table[RICHARDSON_LEVELS - 1][RICHARDSON_LEVELS - 1];
    let before = table[RICHARDSON_LEVELS - 2][RICHARDSON_LEVELS - 2];
    let scale = spread * spread;
    if (last - before).abs() > 1e-8 * scale + 1e-7 * last.abs() {
        return Err(Error::Extrapolation(format!(
            "Richardson estimates {before:e} and {last:e} disagree"
        )));
    }
    Ok(last)
}
