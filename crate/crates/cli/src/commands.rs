use qzeno::geometry::{jordan_bracket, poisson_bracket, projective_metric_length, QuadraticFunction};
use qzeno::linalg::{self, energy_variance};
use qzeno::qubit::{self, BlochPoint};
use qzeno::sampling::{self, seeded};
use qzeno::zeno;
use qzeno::C64;

use crate::output::{format_float, Cell, Table};
use crate::specs;
use crate::CliError;

/// Slope window for the O(1/N) convergence diagnostic.
const SLOPE_WINDOW: (f64, f64) = (-1.2, -0.8);
/// Max deviation accepted by `brackets`.
const BRACKET_TOL: f64 = 1e-8;

fn finite(field: &str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::usage(format!("--{field} must be finite")))
    }
}

fn core_err(context: &str) -> impl Fn(qzeno::Error) -> CliError + '_ {
    move |e| CliError::usage(format!("{context}: {e}"))
}

pub fn survival(h_spec: &str, psi_spec: &str, t_max: f64, samples: usize, seed: u64) -> Result<Table, CliError> {
    let t_max = finite("t-max", t_max)?;
    if samples < 2 {
        return Err(CliError::usage("--samples must be at least 2"));
    }
    let mut rng = seeded(seed);
    let h = specs::hamiltonian(h_spec, &mut rng)?.operator;
    let psi = specs::state(psi_spec, h.dim(), &mut rng)?;
    psi.ensure_normalized().map_err(core_err("--state"))?;
    let tau = linalg::zeno_time(&psi, &h).map_err(core_err("--state"))?;

    let mut table = Table::new(&["t", "p", "quadratic_approx"]);
    for k in 0..samples {
        let t = t_max * k as f64 / (samples - 1) as f64;
        let p = linalg::survival_probability(&psi, &h, t).map_err(core_err("survival"))?;
        let quad = if tau.is_finite() { 1.0 - t * t / (tau * tau) } else { 1.0 };
        table.push(vec![Cell::Num(t), Cell::Num(p), Cell::Num(quad)]);
    }
    table.note("zeno_time", format_float(tau));
    Ok(table)
}

pub fn zeno_time(h_spec: &str, psi_spec: &str, seed: u64) -> Result<Table, CliError> {
    let mut rng = seeded(seed);
    let hs = specs::hamiltonian(h_spec, &mut rng)?;
    let h = hs.operator;
    let psi = specs::state(psi_spec, h.dim(), &mut rng)?;
    let tau = linalg::zeno_time(&psi, &h).map_err(core_err("--state"))?;
    let variance = energy_variance(&psi, &h).map_err(core_err("--state"))?;
    let geometric = projective_metric_length(&h, &psi).map_err(core_err("--state"))?;
    let normalized = psi.normalized().map_err(core_err("--state"))?;
    let fitted = linalg::short_time_coefficient(&normalized, &h).map_err(core_err("short-time fit"))?;

    let mut table = Table::new(&["quantity", "value"]);
    let mut row = |name: &str, v: f64| table.push(vec![Cell::Text(name.into()), Cell::Num(v)]);
    row("zeno_time", tau);
    row("variance", variance);
    row("projective_metric_length", geometric);
    row("short_time_coefficient", fitted);
    if h.dim() == 2 {
        let hq = hs.qubit.unwrap_or_else(|| qubit_params(&h));
        row("qubit_cross_product", qubit::qubit_zeno_rate_sqr(&hq, &psi).map_err(core_err("--state"))?);
    }
    Ok(table)
}

/// `h0 = tr(H)/2`, `h_i = tr(H sigma_i)/2` for a 2x2 Hermitian matrix.
fn qubit_params(h: &linalg::HermitianOperator) -> qubit::QubitHamiltonian {
    let m = h.matrix();
    qubit::QubitHamiltonian {
        h0: 0.5 * (m[[0, 0]].re + m[[1, 1]].re),
        h: [m[[1, 0]].re, m[[1, 0]].im, 0.5 * (m[[0, 0]].re - m[[1, 1]].re)],
    }
}

pub fn converge(
    h_spec: &str,
    p_spec: &str,
    t: f64,
    n_max: usize,
    seed: u64,
) -> Result<(Table, Result<(), CliError>), CliError> {
    let t = finite("t", t)?;
    if n_max < 8 || !n_max.is_power_of_two() {
        return Err(CliError::usage(format!("--n-max must be a power of two >= 8, got {n_max}")));
    }
    let mut rng = seeded(seed);
    let h = specs::hamiltonian(h_spec, &mut rng)?.operator;
    let p = specs::projector(p_spec, h.dim(), &mut rng)?;
    let ladder: Vec<usize> = (3..=n_max.trailing_zeros()).map(|k| 1usize << k).collect();
    let scan = zeno::convergence_scan(&h, &p, t, &ladder).map_err(core_err("converge"))?;

    let mut table = Table::new(&["N", "error_spectral", "error_frobenius"]);
    for pt in &scan {
        table.push(vec![Cell::Int(pt.n), Cell::Num(pt.error_spectral), Cell::Num(pt.error_frobenius)]);
    }
    table.note("monotone", zeno::is_monotone_within(&scan, 0.2).to_string());
    let verdict = match zeno::fit_log_slope(&scan) {
        None if scan.iter().all(|pt| pt.error_spectral <= zeno::EXACT_TOL) => {
            table.note("slope", "exact");
            Ok(())
        }
        None => {
            table.note("slope", "undetermined");
            Err(CliError::Tolerance("too few non-zero errors to fit a slope".into()))
        }
        Some(slope) => {
            table.note("slope", format!("{slope:.6}"));
            if (SLOPE_WINDOW.0..=SLOPE_WINDOW.1).contains(&slope) {
                Ok(())
            } else {
                Err(CliError::Tolerance(format!(
                    "log-log slope {slope:.4} outside [{}, {}]",
                    SLOPE_WINDOW.0, SLOPE_WINDOW.1
                )))
            }
        }
    };
    Ok((table, verdict))
}

pub fn flow(h_spec: &str, start_spec: &str, t: f64, steps: Option<usize>, seed: u64) -> Result<Table, CliError> {
    let t = finite("t", t)?;
    let hq = specs::qubit_from_spec(h_spec)?;
    let start = specs::bloch_start(start_spec, &mut seeded(seed))?;
    let steps = steps.unwrap_or_else(|| qubit::default_steps(&hq, t));
    if steps == 0 {
        return Err(CliError::usage("--steps must be positive"));
    }
    let traj = qubit::integrate_zeno_flow(&hq, &start, t, steps).map_err(core_err("--state"))?;

    let mut table = Table::new(&["t", "u", "x", "y", "z"]);
    let (mut du, mut dz, mut sphere) = (0.0_f64, 0.0_f64, 0.0_f64);
    for (k, b) in traj.iter().enumerate() {
        let time = t * k as f64 / steps as f64;
        table.push(vec![Cell::Num(time), Cell::Num(b.u), Cell::Num(b.x), Cell::Num(b.y), Cell::Num(b.z)]);
        du = du.max((b.u - start.u).abs());
        dz = dz.max((b.z - start.z).abs());
        sphere = sphere.max(BlochPoint::constraint_residual(b).abs());
    }
    table.note(
        "conserved",
        format!("u (max drift {}), z (max drift {})", format_float(du), format_float(dz)),
    );
    table.note("angular_velocity", format_float(qubit::zeno_flow_generator(&hq).angular_velocity()));
    table.note("max_sphere_residual", format_float(sphere));
    Ok(table)
}

pub fn brackets(dim: usize, trials: usize, seed: u64) -> Result<(Table, Result<(), CliError>), CliError> {
    if !(1..=16).contains(&dim) {
        return Err(CliError::usage(format!("--dim must be in 1..=16, got {dim}")));
    }
    if trials == 0 {
        return Err(CliError::usage("--trials must be positive"));
    }
    let mut rng = seeded(seed);
    // (max deviation, worst trial, max |bracket|) for Poisson and Jordan.
    let mut poisson = (0.0_f64, 0usize, 0.0_f64);
    let mut jordan = (0.0_f64, 0usize, 0.0_f64);
    for trial in 0..trials {
        let a = sampling::hermitian(&mut rng, dim, 2.0);
        let b = sampling::hermitian(&mut rng, dim, 2.0);
        let psi = sampling::raw_state(&mut rng, dim);
        let (fa, fb) = (QuadraticFunction::new(a.clone()), QuadraticFunction::new(b.clone()));
        let eval = |r: qzeno::Result<f64>| r.map_err(core_err("brackets"));
        let pb = eval(poisson_bracket(&fa, &fb, &psi))?;
        let lie = eval(a.lie_product(&b).and_then(|op| op.quadratic_form(&psi)))?;
        let jb = eval(jordan_bracket(&fa, &fb, &psi))?;
        let jor = eval(a.jordan_product(&b).and_then(|op| op.quadratic_form(&psi)))?;
        for (acc, value, image) in [(&mut poisson, pb, lie), (&mut jordan, jb, jor)] {
            let dev = (value - image).abs();
            if dev > acc.0 {
                acc.0 = dev;
                acc.1 = trial;
            }
            acc.2 = acc.2.max(value.abs());
        }
    }
    let mut table = Table::new(&["bracket", "max_deviation", "worst_trial", "max_abs_bracket"]);
    for (name, acc) in [("poisson", poisson), ("jordan", jordan)] {
        table.push(vec![Cell::Text(name.into()), Cell::Num(acc.0), Cell::Int(acc.1), Cell::Num(acc.2)]);
    }
    let worst = poisson.0.max(jordan.0);
    table.note("max_deviation", format_float(worst));
    table.note("tolerance", format_float(BRACKET_TOL));
    let verdict = if worst <= BRACKET_TOL {
        Ok(())
    } else {
        let (name, acc) = if poisson.0 >= jordan.0 { ("poisson", poisson) } else { ("jordan", jordan) };
        Err(CliError::Tolerance(format!(
            "{name} bracket deviates by {:e} at trial {} (seed {seed}, dim {dim})",
            acc.0, acc.1
        )))
    };
    Ok((table, verdict))
}

pub fn freeze(h_spec: &str, t: f64) -> Result<Table, CliError> {
    let t = finite("t", t)?;
    let hq = specs::qubit_from_spec(h_spec)?;
    let check = qubit::frozen_state_check(&hq, t).map_err(core_err("freeze"))?;
    let expected = C64::from_polar(1.0, -hq.zeno_energy() * t);
    let mut table = Table::new(&["quantity", "value"]);
    let mut row = |name: &str, v: f64| table.push(vec![Cell::Text(name.into()), Cell::Num(v)]);
    row("survival", check.survival);
    row("phase_re", check.phase.re);
    row("phase_im", check.phase.im);
    row("expected_phase_re", expected.re);
    row("expected_phase_im", expected.im);
    Ok(table)
}
