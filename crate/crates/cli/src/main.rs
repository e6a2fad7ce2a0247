//! `qzeno`: command-line experiments for the quantum Zeno toolkit.
//!
//! Exit codes: 0 success, 1 a tolerance check failed, 2 bad usage or input.

mod commands;
mod output;
mod specs;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Tolerance(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Tolerance(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qzeno", version, about = "Quantum Zeno effect experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Seed for every random preset.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Survival probability p(t) with its short-time quadratic approximation.
    Survival {
        /// JSON file or preset: sigma_x, sigma_y, sigma_z, qubit:h0,hx,hy,hz, diag:..., random:n.
        #[arg(long)]
        hamiltonian: String,
        /// JSON file or preset: e1, e2, ek:k, plus, random.
        #[arg(long, default_value = "e1")]
        state: String,
        #[arg(long, default_value_t = std::f64::consts::PI)]
        t_max: f64,
        /// Number of sample times, including t = 0 and t = t_max.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Zeno time by the variance, geometric and (for qubits) cross-product routes.
    ZenoTime {
        #[arg(long)]
        hamiltonian: String,
        #[arg(long, default_value = "e1")]
        state: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Convergence of (P U(t/N) P)^N to exp(-i PHP t) P on N = 8, 16, ..., N_max.
    Converge {
        #[arg(long)]
        hamiltonian: String,
        /// JSON file or preset: e1, ek:k, north, identity, random:rank.
        #[arg(long, default_value = "e1")]
        projector: String,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        /// Largest N, a power of two >= 8.
        #[arg(long, default_value_t = 1024)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Zeno flow on the Bloch sphere for P = (I + sigma_z)/2.
    Flow {
        /// qubit:h0,hx,hy,hz
        #[arg(long)]
        hamiltonian: String,
        /// north, south, equator, bloch:u,x,y,z, or a qubit state spec.
        #[arg(long, default_value = "equator")]
        state: String,
        #[arg(long, default_value_t = std::f64::consts::PI)]
        t: f64,
        /// RK4 steps (default max(1000, ceil(100 |h0 + hz| t))).
        #[arg(long)]
        steps: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Checks the Poisson/Jordan bracket identities on random observables.
    Brackets {
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Survival and phase of e1 under the Zeno unitary for P = (I + sigma_z)/2.
    Freeze {
        /// qubit:h0,hx,hy,hz
        #[arg(long)]
        hamiltonian: String,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let (table, output) = match cli.command {
        Command::Survival { hamiltonian, state, t_max, samples, output } => {
            (commands::survival(&hamiltonian, &state, t_max, samples, output.seed)?, output)
        }
        Command::ZenoTime { hamiltonian, state, output } => {
            (commands::zeno_time(&hamiltonian, &state, output.seed)?, output)
        }
        Command::Converge { hamiltonian, projector, t, n_max, output } => {
            let (table, verdict) = commands::converge(&hamiltonian, &projector, t, n_max, output.seed)?;
            table.emit(output.format, output.out.as_deref())?;
            return verdict;
        }
        Command::Flow { hamiltonian, state, t, steps, output } => {
            (commands::flow(&hamiltonian, &state, t, steps, output.seed)?, output)
        }
        Command::Brackets { dim, trials, output } => {
            let (table, verdict) = commands::brackets(dim, trials, output.seed)?;
            table.emit(output.format, output.out.as_deref())?;
            return verdict;
        }
        Command::Freeze { hamiltonian, t, output } => (commands::freeze(&hamiltonian, t)?, output),
    };
    table.emit(output.format, output.out.as_deref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            match &err {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Tolerance(msg) => eprintln!("tolerance failure: {msg}"),
            }
            ExitCode::from(err.exit_code())
        }
    }
}
