//! Numerical toolkit for the quantum Zeno effect.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: states, Hermitian operators, projectors, the matrix
//!   exponential, survival amplitudes and the Zeno time.
//! * [`geometry`]: the real `(q, p)` chart of `C^n`, the metric and symplectic
//!   tensors, Poisson and Jordan brackets on expectation values and the Zeno
//!   time as the length of a Hamiltonian vector field on projective space.
//! * [`zeno`]: repeated projective measurements `(P U(t/N) P)^N`, the Zeno
//!   Hamiltonian `PHP` and the limiting Zeno unitary.
//! * [`qubit`]: Bloch functions, the cross-product Zeno time and the Zeno
//!   flow on the Bloch sphere for `P = |e1><e1|`.
//!
//! Units: `hbar = 1`, so time and energy are reciprocal dimensionless numbers.

pub mod error;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod qubit;
pub mod sampling;
pub mod zeno;

pub use error::{Error, Result};
pub use linalg::{HermitianOperator, Projector, State, UnitaryMatrix};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
