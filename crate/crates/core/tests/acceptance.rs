//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any criterion fails.
//!
//! Run with `cargo test -p qzeno-core --test acceptance`.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;

use qzeno::geometry::{
    conformal_metric, differential, homogeneous_differential, homogeneous_expectation,
    jordan_bracket, poisson_bracket, projective_metric_length, QuadraticFunction, RealChartPoint,
};
use qzeno::linalg::{self, energy_variance, HermitianOperator, Projector, State};
use qzeno::qubit::{self, BlochPoint, QubitHamiltonian};
use qzeno::sampling::{self, seeded};
use qzeno::zeno;
use qzeno::C64;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

/// 1. Short-time law: fitted quadratic coefficient of 1 - p(t) equals (Delta H)^2.
fn short_time_law() -> Outcome {
    let start = Instant::now();
    let mut rng = seeded(101);
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let n = rng.random_range(2..=6);
        let scale = rng.random_range(0.5..3.0);
        let h = sampling::hermitian(&mut rng, n, scale);
        let psi = sampling::normalized_state(&mut rng, n);
        let fitted = linalg::short_time_coefficient(&psi, &h).expect("extrapolation");
        let var = energy_variance(&psi, &h).unwrap();
        worst = worst.max((fitted - var).abs() / var);
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        worst <= 1e-6 && secs < 5.0,
        format!("max relative error {worst:.2e} (tol 1e-6), {secs:.2} s (limit 5 s)"),
    )
}

/// 2. G~(df~_H, df~_H) = f~_{H^2} - (f~_H)^2, invariant under psi -> lambda psi.
fn geometric_zeno_time() -> Outcome {
    let mut rng = seeded(202);
    let lambdas = [C64::new(2.0, 0.0), C64::new(-1.0, 0.0), C64::new(0.0, 1.0), C64::new(0.5, 0.5)];
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=6);
        let h = sampling::hermitian(&mut rng, n, 2.0);
        let psi = sampling::raw_state(&mut rng, n).scaled(C64::new(rng.random_range(0.2..5.0), 0.0));
        let variance = |s: &State| {
            let mean = homogeneous_expectation(&h, s).unwrap();
            homogeneous_expectation(&h.square(), s).unwrap() - mean * mean
        };
        let target = variance(&psi);
        let length = projective_metric_length(&h, &psi).unwrap();
        // Same quantity assembled from the conformal metric by hand.
        let df = homogeneous_differential(&h, &psi).unwrap();
        let manual = conformal_metric(&psi, &df, &df).unwrap();
        worst = worst.max((length - target).abs()).max((manual - target).abs());
        for &lambda in &lambdas {
            let scaled = psi.scaled(lambda);
            worst = worst.max((projective_metric_length(&h, &scaled).unwrap() - target).abs());
            worst = worst.max((variance(&scaled) - target).abs());
        }
    }
    outcome(worst <= 1e-10, format!("max deviation {worst:.2e} (tol 1e-10)"))
}

/// 3. Lie-Jordan isomorphism and the Jacobi identity.
fn lie_jordan() -> Outcome {
    let mut rng = seeded(303);
    let mut worst_pb = 0.0_f64;
    let mut worst_jb = 0.0_f64;
    for _ in 0..200 {
        let n = rng.random_range(1..=6);
        let a = sampling::hermitian(&mut rng, n, 2.0);
        let b = sampling::hermitian(&mut rng, n, 2.0);
        let psi = sampling::raw_state(&mut rng, n);
        let (fa, fb) = (QuadraticFunction::new(a.clone()), QuadraticFunction::new(b.clone()));
        let pb = poisson_bracket(&fa, &fb, &psi).unwrap();
        let jb = jordan_bracket(&fa, &fb, &psi).unwrap();
        worst_pb = worst_pb.max((pb - a.lie_product(&b).unwrap().quadratic_form(&psi).unwrap()).abs());
        worst_jb = worst_jb.max((jb - a.jordan_product(&b).unwrap().quadratic_form(&psi).unwrap()).abs());
    }
    let mut worst_jacobi = 0.0_f64;
    for _ in 0..50 {
        let n = rng.random_range(1..=6);
        let ops: Vec<HermitianOperator> = (0..3).map(|_| sampling::hermitian(&mut rng, n, 2.0)).collect();
        let psi = sampling::raw_state(&mut rng, n);
        let mut total = 0.0;
        for k in 0..3 {
            let (a, b, c) = (&ops[k], &ops[(k + 1) % 3], &ops[(k + 2) % 3]);
            let inner = QuadraticFunction::new(b.lie_product(c).unwrap());
            total += poisson_bracket(&QuadraticFunction::new(a.clone()), &inner, &psi).unwrap();
        }
        worst_jacobi = worst_jacobi.max(total.abs());
    }
    outcome(
        worst_pb <= 1e-9 && worst_jb <= 1e-9 && worst_jacobi <= 1e-8,
        format!(
            "Poisson {worst_pb:.2e}, Jordan {worst_jb:.2e} (tol 1e-9), Jacobi {worst_jacobi:.2e} (tol 1e-8)"
        ),
    )
}

/// 4. Zeno limit: O(1/N) convergence, exact commuting case, closed form.
fn zeno_limit() -> Outcome {
    let start = Instant::now();
    let ladder: Vec<usize> = (3..=10).map(|k| 1usize << k).collect();
    let mut rng = seeded(404);
    let (mut min_slope, mut max_slope) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut all_decreasing = true;
    for _ in 0..20 {
        let n = rng.random_range(2..=8);
        let rank = rng.random_range(1..n);
        let h = sampling::hermitian(&mut rng, n, 2.0);
        let p = sampling::projector(&mut rng, n, rank);
        let scan = zeno::convergence_scan(&h, &p, 1.0, &ladder).unwrap();
        all_decreasing &= scan.windows(2).all(|w| w[1].error_spectral < w[0].error_spectral);
        let slope = zeno::fit_log_slope(&scan).unwrap_or(f64::NAN);
        min_slope = min_slope.min(slope);
        max_slope = max_slope.max(slope);
    }
    let slopes_ok = (-1.2..=-0.8).contains(&min_slope) && (-1.2..=-0.8).contains(&max_slope);

    // [H, P] = 0: H block-diagonal with respect to a random projector.
    let mut worst_commuting = 0.0_f64;
    for _ in 0..5 {
        let n = rng.random_range(2..=8);
        let rank = rng.random_range(1..n);
        let p = sampling::projector(&mut rng, n, rank);
        let a = sampling::hermitian(&mut rng, n, 2.0);
        let b = sampling::hermitian(&mut rng, n, 2.0);
        let q = Projector::identity(n).as_operator().linear_combination(1.0, &p.as_operator(), -1.0).unwrap();
        let block = |x: &HermitianOperator, proj: &HermitianOperator| {
            proj.matrix().dot(x.matrix()).dot(proj.matrix())
        };
        let h = HermitianOperator::hermitian_part(&(block(&a, &p.as_operator()) + block(&b, &q))).unwrap();
        for pt in zeno::convergence_scan(&h, &p, 1.0, &ladder).unwrap() {
            worst_commuting = worst_commuting.max(pt.error_spectral);
        }
    }

    let sx = qubit::pauli::sigma_x();
    let pe1 = qubit::north_projector();
    let scan = zeno::convergence_scan(&sx, &pe1, 1.0, &[1024]).unwrap();
    let analytic = ((1.0f64 / 1024.0).cos().powi(1024) - 1.0).abs();
    let closed_dev = (scan[0].error_spectral - analytic).abs();

    let secs = start.elapsed().as_secs_f64();
    outcome(
        slopes_ok && all_decreasing && worst_commuting <= 1e-12 && closed_dev <= 1e-12 && secs < 30.0,
        format!(
            "slopes in [{min_slope:.3}, {max_slope:.3}] (window [-1.2, -0.8]), decreasing {all_decreasing}, \
             commuting max {worst_commuting:.1e} (tol 1e-12), closed-form dev {closed_dev:.1e} (tol 1e-12), {secs:.2} s"
        ),
    )
}

/// 5. Qubit Zeno time: cross-product formula vs variance, independent of h0.
fn qubit_zeno_time() -> Outcome {
    let mut rng = seeded(505);
    let mut worst = 0.0_f64;
    let mut worst_h0 = 0.0_f64;
    for _ in 0..100 {
        let hq = sampling::qubit_hamiltonian(&mut rng);
        let psi = sampling::raw_state(&mut rng, 2);
        let cross = qubit::qubit_zeno_rate_sqr(&hq, &psi).unwrap();
        let var = energy_variance(&psi, &hq.operator()).unwrap();
        worst = worst.max((cross - var).abs());
        let shifted = QubitHamiltonian { h0: hq.h0 + rng.random_range(-5.0..5.0), ..hq };
        worst_h0 = worst_h0.max((qubit::qubit_zeno_rate_sqr(&shifted, &psi).unwrap() - cross).abs());
        worst_h0 = worst_h0.max((energy_variance(&psi, &shifted.operator()).unwrap() - var).abs());
    }
    outcome(
        worst <= 1e-10 && worst_h0 <= 1e-10,
        format!("cross vs variance {worst:.2e}, h0 shift {worst_h0:.2e} (tol 1e-10)"),
    )
}

/// 6. Zeno flow: conservation, sphere constraint, half-period antipode,
/// frozen North Pole.
fn zeno_flow() -> Outcome {
    let mut rng = seeded(606);
    let mut conserve_ratio = 0.0_f64;
    let mut sphere = 0.0_f64;
    for _ in 0..50 {
        let hq = sampling::qubit_hamiltonian(&mut rng);
        let start = qubit::bloch_map(&sampling::raw_state(&mut rng, 2)).unwrap();
        let t = rng.random_range(0.5..10.0);
        let traj = qubit::integrate_zeno_flow(&hq, &start, t, qubit::default_steps(&hq, t)).unwrap();
        for b in &traj {
            let drift = (b.u - start.u).abs().max((b.z - start.z).abs());
            conserve_ratio = conserve_ratio.max(drift / (1e-9 * t));
            sphere = sphere.max(b.constraint_residual().abs());
        }
    }

    // Equator start, h0 + h_z = 1: antipode after half a period, t = pi.
    let hq = QubitHamiltonian::new(0.25, [0.4, -0.3, 0.75]).unwrap();
    let start = BlochPoint::new(1.0, 1.0, 0.0, 0.0);
    let half_period = PI / hq.zeno_energy();
    let traj = qubit::integrate_zeno_flow(&hq, &start, half_period, qubit::default_steps(&hq, half_period)).unwrap();
    let end = traj.last().unwrap();
    let antipode = (end.x + 1.0).abs().max(end.y.abs());

    let mut frozen_dev = 0.0_f64;
    let mut pole_moved = false;
    for _ in 0..20 {
        let hq = sampling::qubit_hamiltonian(&mut rng);
        let t = rng.random_range(-10.0..10.0);
        let check = qubit::frozen_state_check(&hq, t).unwrap();
        frozen_dev = frozen_dev
            .max((check.survival - 1.0).abs())
            .max((check.phase - C64::from_polar(1.0, -hq.zeno_energy() * t)).norm());
        let traj = qubit::integrate_zeno_flow(&hq, &BlochPoint::north_pole(), t, 1000).unwrap();
        pole_moved |= traj.iter().any(|b| *b != BlochPoint::north_pole());
    }

    outcome(
        conserve_ratio <= 1.0 && sphere <= 1e-8 && antipode <= 1e-6 && frozen_dev <= 1e-10 && !pole_moved,
        format!(
            "u,z drift {conserve_ratio:.2e} x (1e-9 t), sphere {sphere:.2e} (tol 1e-8), antipode {antipode:.2e} \
             (tol 1e-6), frozen {frozen_dev:.2e} (tol 1e-10), pole stationary {}",
            !pole_moved
        ),
    )
}

/// 7. Flow/unitary consistency triangle.
fn consistency_triangle() -> Outcome {
    let mut rng = seeded(707);
    let pe1 = qubit::north_projector();
    let mut worst = 0.0_f64;
    for _ in 0..50 {
        let hq = sampling::qubit_hamiltonian(&mut rng);
        let t = rng.random_range(0.1..5.0);
        let hz = zeno::zeno_hamiltonian(&hq.operator(), &pe1).unwrap();
        let free_zeno = linalg::expm_antihermitian(&hz, t).unwrap();
        let uz = zeno::zeno_limit_unitary(&hq.operator(), &pe1, t).unwrap();

        // Superposition evolved by exp(-i H_Z t).
        let psi = sampling::normalized_state(&mut rng, 2);
        let target = qubit::bloch_map(&free_zeno.apply(&psi).unwrap()).unwrap();
        let start = qubit::bloch_map(&psi).unwrap();
        let flow = qubit::integrate_zeno_flow(&hq, &start, t, qubit::default_steps(&hq, t)).unwrap();
        worst = worst.max(bloch_distance(flow.last().unwrap(), &target));

        // Prepared state in range(P) evolved by U_Z(t).
        let prepared = State::basis(2, 0).unwrap().scaled(C64::from_polar(1.0, rng.random_range(0.0..6.0)));
        let evolved = State::from_array(uz.dot(prepared.amplitudes())).unwrap();
        let target = qubit::bloch_map(&evolved).unwrap();
        let start = qubit::bloch_map(&prepared).unwrap();
        let flow = qubit::integrate_zeno_flow(&hq, &start, t, qubit::default_steps(&hq, t)).unwrap();
        worst = worst.max(bloch_distance(flow.last().unwrap(), &target));
    }
    outcome(worst <= 1e-7, format!("max Bloch deviation {worst:.2e} (tol 1e-7)"))
}

fn bloch_distance(a: &BlochPoint, b: &BlochPoint) -> f64 {
    (a.u - b.u).abs().max((a.x - b.x).abs()).max((a.y - b.y).abs()).max((a.z - b.z).abs())
}

/// 8. Analytic differentials vs central finite differences.
fn gradient_oracle() -> Outcome {
    let mut rng = seeded(808);
    let step = 1e-5;
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=6);
        let scale = rng.random_range(0.5..4.0);
        let a = sampling::hermitian(&mut rng, n, scale);
        let psi = sampling::raw_state(&mut rng, n);
        let f = QuadraticFunction::new(a);
        let analytic = differential(&f, &psi).unwrap();
        let base = RealChartPoint::from_state(&psi);
        let numeric: Vec<f64> = (0..2 * n)
            .map(|i| {
                let shifted = |delta: f64| {
                    let mut c = base.coords().to_vec();
                    c[i] += delta;
                    f.evaluate(&RealChartPoint::new(c).unwrap().to_state()).unwrap()
                };
                (shifted(step) - shifted(-step)) / (2.0 * step)
            })
            .collect();
        let scale = analytic.components().iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let err = analytic
            .components()
            .iter()
            .zip(&numeric)
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
        worst = worst.max(err / scale);
    }
    outcome(worst <= 1e-6, format!("max relative error {worst:.2e} (tol 1e-6)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("AC1 short-time law", short_time_law),
        ("AC2 geometric Zeno-time identity", geometric_zeno_time),
        ("AC3 Lie-Jordan isomorphism", lie_jordan),
        ("AC4 Zeno limit convergence", zeno_limit),
        ("AC5 qubit Zeno time", qubit_zeno_time),
        ("AC6 qubit Zeno flow", zeno_flow),
        ("AC7 flow/unitary consistency", consistency_triangle),
        ("AC8 gradient oracle", gradient_oracle),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let result = run();
        let tag = if result.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {}", result.detail);
        if !result.passed {
            failures += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
