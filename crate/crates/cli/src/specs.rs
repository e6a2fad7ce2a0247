//! Parsing of `--hamiltonian`, `--projector` and `--state` arguments.
//!
//! Each accepts either a path to a JSON file in the `{dim, re, im}` format or a
//! named preset. Random presets draw from the shared seeded RNG in argument
//! order (Hamiltonian, then projector, then state).

use std::f64::consts::FRAC_1_SQRT_2;
use std::path::Path;

use rand_chacha::ChaCha8Rng;

use qzeno::io::ComplexArrayJson;
use qzeno::linalg::{HermitianOperator, Projector, State};
use qzeno::qubit::{pauli, BlochPoint, QubitHamiltonian};
use qzeno::{sampling, C64};

use crate::CliError;

/// Spectral norm of `random:n` Hamiltonians.
const RANDOM_SCALE: f64 = 2.0;

pub const HAMILTONIAN_PRESETS: &str =
    "sigma_x, sigma_y, sigma_z, qubit:h0,hx,hy,hz, diag:e1,e2,..., random:n";
pub const PROJECTOR_PRESETS: &str = "e1, ek:k, north, identity, random:rank";
pub const STATE_PRESETS: &str = "e1, e2, ek:k, plus, random";

fn read_json(field: &str, path: &str) -> Result<ComplexArrayJson, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("--{field}: cannot read '{path}': {e}")))?;
    ComplexArrayJson::parse(&text).map_err(|e| CliError::usage(format!("--{field}: {e}")))
}

fn looks_like_path(spec: &str) -> bool {
    spec.ends_with(".json") || Path::new(spec).is_file()
}

fn parse_floats(field: &str, list: &str, expected: Option<usize>) -> Result<Vec<f64>, CliError> {
    let values: Result<Vec<f64>, _> = list.split(',').map(|s| s.trim().parse::<f64>()).collect();
    let values = values.map_err(|_| CliError::usage(format!("--{field}: cannot parse numbers in '{list}'")))?;
    if values.iter().any(|v| !v.is_finite()) {
        return Err(CliError::usage(format!("--{field}: non-finite number in '{list}'")));
    }
    if let Some(n) = expected {
        if values.len() != n {
            return Err(CliError::usage(format!(
                "--{field}: expected {n} comma-separated numbers, got {}",
                values.len()
            )));
        }
    }
    Ok(values)
}

fn parse_count(field: &str, text: &str) -> Result<usize, CliError> {
    text.trim()
        .parse::<usize>()
        .map_err(|_| CliError::usage(format!("--{field}: '{text}' is not a non-negative integer")))
}

fn unknown(field: &str, spec: &str, presets: &str) -> CliError {
    CliError::usage(format!(
        "--{field}: '{spec}' is neither a readable JSON file nor a preset ({presets})"
    ))
}

/// A parsed Hamiltonian, remembering the qubit parameters when given that way.
pub struct HamiltonianSpec {
    pub operator: HermitianOperator,
    pub qubit: Option<QubitHamiltonian>,
}

pub fn qubit_from_spec(spec: &str) -> Result<QubitHamiltonian, CliError> {
    let Some(rest) = spec.strip_prefix("qubit:") else {
        return Err(CliError::usage(format!(
            "--hamiltonian: this command needs a qubit Hamiltonian 'qubit:h0,hx,hy,hz', got '{spec}'"
        )));
    };
    let v = parse_floats("hamiltonian", rest, Some(4))?;
    QubitHamiltonian::new(v[0], [v[1], v[2], v[3]]).map_err(|e| CliError::usage(format!("--hamiltonian: {e}")))
}

pub fn hamiltonian(spec: &str, rng: &mut ChaCha8Rng) -> Result<HamiltonianSpec, CliError> {
    let plain = |operator| Ok(HamiltonianSpec { operator, qubit: None });
    match spec {
        "sigma_x" => return plain(pauli::sigma_x()),
        "sigma_y" => return plain(pauli::sigma_y()),
        "sigma_z" => return plain(pauli::sigma_z()),
        _ => {}
    }
    if spec.starts_with("qubit:") {
        let hq = qubit_from_spec(spec)?;
        return Ok(HamiltonianSpec { operator: hq.operator(), qubit: Some(hq) });
    }
    if let Some(rest) = spec.strip_prefix("diag:") {
        return plain(HermitianOperator::diagonal(&parse_floats("hamiltonian", rest, None)?));
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        let n = parse_count("hamiltonian", rest)?;
        if !(1..=64).contains(&n) {
            return Err(CliError::usage(format!("--hamiltonian: random dimension {n} outside 1..=64")));
        }
        return plain(sampling::hermitian(rng, n, RANDOM_SCALE));
    }
    if looks_like_path(spec) {
        let json = read_json("hamiltonian", spec)?;
        let operator = json.to_hermitian().map_err(|e| CliError::usage(format!("--hamiltonian: {e}")))?;
        return plain(operator);
    }
    Err(unknown("hamiltonian", spec, HAMILTONIAN_PRESETS))
}

fn basis_index(field: &str, spec: &str, n: usize) -> Result<Option<usize>, CliError> {
    let k = match spec {
        "e1" => 1,
        "e2" => 2,
        _ => match spec.strip_prefix("ek:") {
            Some(rest) => parse_count(field, rest)?,
            None => return Ok(None),
        },
    };
    if k == 0 || k > n {
        return Err(CliError::usage(format!("--{field}: basis index {k} outside 1..={n}")));
    }
    Ok(Some(k - 1))
}

pub fn projector(spec: &str, n: usize, rng: &mut ChaCha8Rng) -> Result<Projector, CliError> {
    if spec == "identity" {
        return Ok(Projector::identity(n));
    }
    let field = "projector";
    let spec_for_basis = if spec == "north" { "e1" } else { spec };
    if let Some(k) = basis_index(field, spec_for_basis, n)? {
        let e = State::basis(n, k).expect("index checked");
        return Projector::rank_one(&e).map_err(|e| CliError::usage(format!("--{field}: {e}")));
    }
    if let Some(rest) = spec.strip_prefix("random:") {
        let rank = parse_count(field, rest)?;
        if rank == 0 || rank > n {
            return Err(CliError::usage(format!("--{field}: rank {rank} outside 1..={n}")));
        }
        return Ok(sampling::projector(rng, n, rank));
    }
    if looks_like_path(spec) {
        let json = read_json(field, spec)?;
        let p = json.to_projector().map_err(|e| CliError::usage(format!("--{field}: {e}")))?;
        if p.dim() != n {
            return Err(CliError::usage(format!(
                "--{field}: dimension {} does not match the Hamiltonian ({n})",
                p.dim()
            )));
        }
        return Ok(p);
    }
    Err(unknown(field, spec, PROJECTOR_PRESETS))
}

pub fn state(spec: &str, n: usize, rng: &mut ChaCha8Rng) -> Result<State, CliError> {
    let field = "state";
    if let Some(k) = basis_index(field, spec, n)? {
        return Ok(State::basis(n, k).expect("index checked"));
    }
    match spec {
        "plus" => {
            let amp = 1.0 / (n as f64).sqrt();
            return Ok(State::new(vec![C64::new(amp, 0.0); n]).expect("finite"));
        }
        "random" => return Ok(sampling::normalized_state(rng, n)),
        _ => {}
    }
    if looks_like_path(spec) {
        let json = read_json(field, spec)?;
        let psi = json.to_state().map_err(|e| CliError::usage(format!("--{field}: {e}")))?;
        if psi.dim() != n {
            return Err(CliError::usage(format!(
                "--{field}: dimension {} does not match the Hamiltonian ({n})",
                psi.dim()
            )));
        }
        return Ok(psi);
    }
    Err(unknown(field, spec, STATE_PRESETS))
}

/// Flow starts: Bloch presets, `bloch:u,x,y,z`, or any qubit state spec.
pub fn bloch_start(spec: &str, rng: &mut ChaCha8Rng) -> Result<BlochPoint, CliError> {
    let point = match spec {
        "north" => BlochPoint::north_pole(),
        "south" => BlochPoint::new(1.0, 0.0, 0.0, -1.0),
        "equator" => BlochPoint::new(1.0, 1.0, 0.0, 0.0),
        _ => match spec.strip_prefix("bloch:") {
            Some(rest) => {
                let v = parse_floats("state", rest, Some(4))?;
                BlochPoint::new(v[0], v[1], v[2], v[3])
            }
            None => {
                let psi = if spec == "plus" {
                    State::new(vec![C64::new(FRAC_1_SQRT_2, 0.0); 2]).expect("finite")
                } else {
                    state(spec, 2, rng)?
                };
                qzeno::qubit::bloch_map(&psi).map_err(|e| CliError::usage(format!("--state: {e}")))?
            }
        },
    };
    point
        .check_constraint()
        .map_err(|e| CliError::usage(format!("--state: {e}")))?;
    Ok(point)
}
