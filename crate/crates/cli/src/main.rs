//! `nda-riccati`: reproducible experiment runs with JSON and CSV output.
//!
//! Exit codes: 0 success, 1 malformed input, 2 tolerance failure, 3 blow-up.

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "nda-riccati", version, about = "Riccati equations over R, C, H and O")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
enum Command {
    /// Composition-law residuals on random samples.
    Laws(LawsArgs),
    /// Lie closure of a generator family.
    Closure(ClosureArgs),
    /// RK4 integration of a Riccati spec; CSV trajectory to --out.
    Integrate(IntegrateArgs),
    /// Real superposition rule against direct integration.
    Superposition(SuperpositionArgs),
    /// Conformal right-hand side against the algebraic one.
    Conformal(ConformalArgs),
    /// Projected linear lift; CSV of chart coordinates to --out.
    Lift(LiftArgs),
    /// Hamiltonian functions, Poisson brackets and invariant-form witness.
    Symplectic(SymplecticArgs),
    /// Stationary quaternionic Schrödinger solve; CSV to --out.
    Schrodinger(SchrodingerArgs),
}

#[derive(Args, Debug, Serialize)]
struct Output {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize, Clone, Copy)]
struct Window {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    t0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t1: f64,
    #[arg(long, default_value_t = 1e-3, value_parser = positive)]
    step: f64,
    /// Norm beyond which a run counts as blown up.
    #[arg(long, default_value_t = 1e8, value_parser = positive)]
    bound: f64,
}

#[derive(Args, Debug, Serialize)]
struct Carrier {
    /// Exact rational arithmetic.
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Floating-point arithmetic.
    #[arg(long)]
    float: bool,
}

#[derive(Args, Debug, Serialize)]
struct LawsArgs {
    #[arg(long, default_value = "O")]
    algebra: String,
    #[arg(long, default_value_t = 1000, value_parser = positive_count)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    // exact unless --float
    #[command(flatten)]
    #[serde(flatten)]
    carrier: Carrier,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct ClosureArgs {
    #[arg(long, default_value = "O")]
    algebra: String,
    /// riccati, rotations, minus-plus, alt-left, alt-right or schrodinger.
    #[arg(long, default_value = "riccati")]
    generators: String,
    #[arg(long, default_value_t = 5)]
    degree_cap: usize,
    #[arg(long, default_value_t = 12, value_parser = positive_count)]
    round_cap: usize,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct IntegrateArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Initial state as `a,b,…` or a JSON array; zero when omitted.
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    #[command(flatten)]
    #[serde(flatten)]
    window: Window,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct SuperpositionArgs {
    /// A spec over R.
    #[arg(long)]
    spec: PathBuf,
    /// Three initial values of the particular solutions.
    #[arg(long, default_value = "-0.5,0,0.3", allow_hyphen_values = true)]
    x0: String,
    #[arg(long, default_value_t = 0.7, allow_negative_numbers = true)]
    k: f64,
    #[arg(long, default_value_t = 1e-6, value_parser = positive)]
    tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    window: Window,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct ConformalArgs {
    #[arg(long)]
    spec: PathBuf,
    /// Number of random (t, a) samples.
    #[arg(long, alias = "samples", default_value_t = 1000, value_parser = positive_count)]
    check: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    // float unless --exact
    #[command(flatten)]
    #[serde(flatten)]
    carrier: Carrier,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct LiftArgs {
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<String>,
    /// Also integrate the Riccati equation directly and report the deviation.
    #[arg(long)]
    compare: bool,
    /// Use the general octonionic formula, allowing non-real b_0L, b_0R.
    #[arg(long)]
    general: bool,
    #[arg(long, default_value_t = 1e-5, value_parser = positive)]
    tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    window: Window,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct SymplecticArgs {
    /// H or O.
    #[arg(long, default_value = "O")]
    algebra: String,
    #[arg(long, default_value_t = 200, value_parser = positive_count)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

#[derive(Args, Debug, Serialize)]
struct SchrodingerArgs {
    /// Potentials `{hbar, m, E, V, W}`.
    #[arg(long)]
    spec: PathBuf,
    #[arg(long, default_value = "0,0,0,0", allow_hyphen_values = true)]
    u0: String,
    #[arg(long, default_value = "1,0,0,0", allow_hyphen_values = true)]
    psi0: String,
    #[arg(long, default_value_t = 1e-5, value_parser = positive)]
    tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    window: Window,
    #[command(flatten)]
    #[serde(flatten)]
    output: Output,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x > 0.0 => Ok(x),
        Ok(_) => Err("must be positive and finite".into()),
        Err(e) => Err(e.to_string()),
    }
}

fn positive_count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run::execute(&cli.command) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
