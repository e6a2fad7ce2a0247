//! Dense complex matrix exponential by scaling and squaring with a Taylor core.

use ndarray::Array2;

use super::norms::one_norm;
use crate::C64;

/// Target 1-norm of the scaled matrix before the Taylor series is summed.
const SCALED_NORM: f64 = 0.5;
const MAX_TERMS: usize = 40;

/// `exp(a)` for a square complex matrix.
///
/// The matrix is scaled by `2^-s` until its 1-norm is at most 0.5, the Taylor
/// series is summed until the next term is below machine precision relative to
/// the partial sum, and the result is squared `s` times.
pub fn expm(a: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    let norm = one_norm(a);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scale = C64::new(2f64.powi(-squarings), 0.0);
    let scaled = a.mapv(|z| z * scale);

    let mut sum = Array2::<C64>::eye(n);
    let mut term = Array2::<C64>::eye(n);
    for k in 1..=MAX_TERMS {
        term = term.dot(&scaled).mapv(|z| z / k as f64);
        sum += &term;
        if one_norm(&term) <= f64::EPSILON * 1e-2 * one_norm(&sum) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = sum.dot(&sum);
    }
    sum
}
