//! `spinphase`: evaluate phase-space fields of spin states and run the
//! numerical self-checks.
//!
//! Exit codes: 0 ok, 1 failed verification, 2 parse error, 3 numerical
//! contract violation (unnormalized state, insufficient grid, ...).

mod commands;
mod output;
mod spec;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use output::Format;

#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Contract(String),
    Io(String),
    VerifyFailed(usize),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Contract(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "parse error: {m}"),
            CliError::Contract(m) => write!(f, "numerical contract violated: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::VerifyFailed(n) => write!(f, "{n} verification group(s) failed"),
        }
    }
}

impl From<spinphase_core::Error> for CliError {
    fn from(e: spinphase_core::Error) -> Self {
        CliError::Contract(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "spinphase",
    version,
    about = "Phase-space amplitudes, Wigner and Husimi functions for spin systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kernel matrices at one point, over the quadrature grid, or on a lattice.
    Kernel(KernelArgs),
    /// Spinor amplitude Tr(|psi><window| Delta) on the sphere.
    Amplitude(FieldArgs),
    /// Wigner function of the state on the sphere.
    Wigner(FieldArgs),
    /// Husimi function |amplitude|^2 on the sphere.
    Husimi(FieldArgs),
    /// Star product of one amplitude with the conjugate of another.
    Star(StarArgs),
    /// Amplitude acted on by a rotation through the star product.
    Rotate(RotateArgs),
    /// Wigner function on the finite lattice.
    WignerLattice(LatticeArgs),
    /// Spinor amplitude on the finite lattice.
    AmplitudeLattice(LatticeArgs),
    /// Rotating-frame NMR evolution of a spin-1/2 amplitude.
    Evolve(EvolveArgs),
    /// Run the invariant checks.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Operator,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisArg {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    #[serde(skip)]
    pub format: Format,
    /// Output file; stdout if absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FieldArgs {
    /// Spin quantum number, e.g. 0.5 or 1.5. Inferred from a component list.
    #[arg(long)]
    pub j: Option<f64>,
    /// up, down, css:theta,phi, or components from m = j down to m = -j.
    #[arg(long, default_value = "up", allow_hyphen_values = true)]
    pub state: String,
    /// Window state, same grammar.
    #[arg(long, default_value = "up", allow_hyphen_values = true)]
    pub window: String,
    /// Grid band limit; defaults to 2(2j)+1.
    #[arg(long = "L")]
    pub band_limit: Option<usize>,
    /// Keep the state as given instead of enforcing unit norm.
    #[arg(long)]
    pub no_normalize: bool,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KernelArgs {
    #[arg(long)]
    pub j: Option<f64>,
    /// Evaluate at one point instead of the grid (needs --phi too).
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    #[arg(long = "L")]
    pub band_limit: Option<usize>,
    /// Lattice kernel of dimension d (2 or odd) instead of the sphere kernel.
    #[arg(long)]
    pub lattice_dim: Option<usize>,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct StarArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Second state; defaults to --state.
    #[arg(long, allow_hyphen_values = true)]
    pub state2: Option<String>,
    /// Second window; defaults to --window.
    #[arg(long, allow_hyphen_values = true)]
    pub window2: Option<String>,
    #[arg(long, value_enum, default_value = "operator")]
    pub route: Route,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RotateArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long, value_enum, default_value = "y")]
    pub axis: AxisArg,
    /// Rotation angle, an expression such as 2*pi.
    #[arg(long, allow_hyphen_values = true)]
    pub angle: String,
    #[arg(long, value_enum, default_value = "operator")]
    pub route: Route,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LatticeArgs {
    /// Components (length d = 2 or odd), or up/down/css with --j.
    #[arg(long, default_value = "up", allow_hyphen_values = true)]
    pub state: String,
    #[arg(long, default_value = "up", allow_hyphen_values = true)]
    pub window: String,
    #[arg(long)]
    pub j: Option<f64>,
    #[arg(long)]
    pub no_normalize: bool,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvolveArgs {
    #[arg(long, default_value = "up", allow_hyphen_values = true)]
    pub state: String,
    #[arg(long, default_value = "up", allow_hyphen_values = true)]
    pub window: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub omega0: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub omega_nut: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub omega_ref: String,
    /// Pulse phase.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub chi: String,
    /// Comma-separated time points.
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["t_max", "steps"])]
    pub times: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<String>,
    /// Number of intervals in [0, t_max].
    #[arg(long, default_value_t = 10)]
    pub steps: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "fast")]
    pub level: LevelArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Test hook: perturb the kernels so the checks must fail.
    #[arg(long, hide = true)]
    pub corrupt_kernel: bool,
}

fn init_threads() {
    if let Some(n) = std::env::var("SPINPHASE_THREADS")
        .ok()
        .and_then(|s| s.trim().parse::<usize>().ok())
    {
        if n > 0 {
            // ignore the error if a pool already exists
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    init_threads();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let res = match cli.command {
        Command::Kernel(a) => commands::kernel(&a),
        Command::Amplitude(a) => commands::sphere_field("amplitude", &a),
        Command::Wigner(a) => commands::sphere_field("wigner", &a),
        Command::Husimi(a) => commands::sphere_field("husimi", &a),
        Command::Star(a) => commands::star(&a),
        Command::Rotate(a) => commands::rotate(&a),
        Command::WignerLattice(a) => commands::lattice_field("wigner-lattice", &a),
        Command::AmplitudeLattice(a) => commands::lattice_field("amplitude-lattice", &a),
        Command::Evolve(a) => commands::evolve(&a),
        Command::Verify(a) => commands::verify(&a),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("spinphase: {e}");
            ExitCode::from(e.code())
        }
    }
}
