//! Matrix norms on dense complex matrices.

use ndarray::{Array1, Array2};

use crate::C64;

pub fn frobenius_norm(m: &Array2<C64>) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Maximum absolute column sum.
pub fn one_norm(m: &Array2<C64>) -> f64 {
    m.columns()
        .into_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn vector_norm(v: &Array1<C64>) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest singular value of `m`.
///
/// Power iteration on `M^dag M`, started from its heaviest column so that the
/// start vector is never orthogonal to the dominant singular subspace when
/// `M != 0`. Iterates until the Rayleigh quotient moves by less than `1e-10`
/// relative (and a few extra sweeps past that), capped at 2000 sweeps.
pub fn spectral_norm(m: &Array2<C64>) -> f64 {
    let fro = frobenius_norm(m);
    if fro == 0.0 {
        return 0.0;
    }
    // Rescale first: keeps M^dag M well inside the floating point range.
    let scaled = m.mapv(|z| z / fro);
    let gram = scaled.t().mapv(|z| z.conj()).dot(&scaled);

    let start = gram
        .columns()
        .into_iter()
        .max_by(|a, b| {
            let na: f64 = a.iter().map(|z| z.norm_sqr()).sum();
            let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
            na.total_cmp(&nb)
        })
        .map(|c| c.to_owned())
        .expect("non-empty matrix");
    let mut v = &start / C64::new(vector_norm(&start), 0.0);

    let mut lambda = 0.0_f64;
    let mut settled = 0;
    for _ in 0..2000 {
        let w = gram.dot(&v);
        let next = v.iter().zip(w.iter()).map(|(a, b)| (a.conj() * b).re).sum::<f64>();
        let wn = vector_norm(&w);
        if wn == 0.0 {
            break;
        }
        v = w / C64::new(wn, 0.0);
        if (next - lambda).abs() <= 1e-10 * next.abs() {
            settled += 1;
            if settled >= 3 {
                lambda = next;
                break;
            }
        } else {
            settled = 0;
        }
        lambda = next;
    }
    lambda.max(0.0).sqrt() * fro
}
