//! Seeded random inputs for property checks and CLI experiments.
//!
//! Everything is drawn from a caller-supplied RNG; with [`seeded`] the same
//! seed reproduces the same matrices bit for bit.

use ndarray::{Array1, Array2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{HermitianOperator, Projector, State};
use crate::qubit::QubitHamiltonian;
use crate::C64;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn complex<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

/// Hermitian part of a matrix with entries uniform in the unit square,
/// rescaled to spectral norm `scale`.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> HermitianOperator {
    let m = Array2::from_shape_simple_fn((n, n), || complex(rng));
    let h = HermitianOperator::hermitian_part(&m).expect("square");
    let norm = h.spectral_norm();
    if norm == 0.0 {
        return h;
    }
    h.linear_combination(scale / norm, &HermitianOperator::zeros(n), 0.0).expect("same dimension")
}

/// Unnormalized state with amplitudes uniform in the unit square.
pub fn raw_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> State {
    loop {
        let amps: Array1<C64> = (0..n).map(|_| complex(rng)).collect();
        let psi = State::from_array(amps).expect("finite");
        if psi.norm_sqr() > 1e-6 {
            return psi;
        }
    }
}

pub fn normalized_state<R: Rng + ?Sized>(rng: &mut R, n: usize) -> State {
    raw_state(rng, n).normalized().expect("nonzero")
}

/// Projector onto the span of `rank` random orthonormalised vectors.
pub fn projector<R: Rng + ?Sized>(rng: &mut R, n: usize, rank: usize) -> Projector {
    assert!(rank >= 1 && rank <= n, "rank must be in 1..=n");
    if rank == n {
        return Projector::identity(n);
    }
    let mut basis: Vec<Array1<C64>> = Vec::with_capacity(rank);
    while basis.len() < rank {
        let mut w: Array1<C64> = (0..n).map(|_| complex(rng)).collect();
        for u in &basis {
            let overlap: C64 = u.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum();
            w = &w - &u.mapv(|x| x * overlap);
        }
        let norm = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-3 {
            basis.push(w / C64::new(norm, 0.0));
        }
    }
    let states: Vec<State> = basis.into_iter().map(|b| State::from_array(b).expect("finite")).collect();
    Projector::from_basis(&states).expect("orthonormal by construction")
}

pub fn qubit_hamiltonian<R: Rng + ?Sized>(rng: &mut R) -> QubitHamiltonian {
    QubitHamiltonian {
        h0: rng.random_range(-2.0..2.0),
        h: [rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)],
    }
}
