use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "reflectode",
    version,
    about = "Green's functions, sign analysis and solvers for u'(t) + a u(-t) + b u(t) = h(t), u(t0) = c"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Regime, frequency, degenerate initial points and thresholds of (a, b).
    #[command(allow_negative_numbers = true)]
    Classify(ProblemArgs),
    /// Green's function on a square lattice, as CSV `t,s,G`.
    #[command(allow_negative_numbers = true)]
    Green(GreenArgs),
    /// Solve the initial value problem, as CSV `t,u`.
    #[command(allow_negative_numbers = true)]
    Solve(SolveArgs),
    /// Constant-sign regions of the Green's function.
    #[command(allow_negative_numbers = true)]
    Region(ProblemArgs),
    /// Compare the solver against the shooting oracle.
    #[command(allow_negative_numbers = true)]
    Validate(ValidateArgs),
    /// Construction for the n-th order equation from an auxiliary pair.
    #[command(allow_negative_numbers = true)]
    Nsolve(NsolveArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    /// Coefficient of u(-t).
    #[arg(long)]
    pub a: Option<f64>,
    /// Coefficient of u(t).
    #[arg(long)]
    pub b: Option<f64>,
    /// Initial point.
    #[arg(long)]
    pub t0: Option<f64>,
    /// Initial value u(t0).
    #[arg(long)]
    pub c: Option<f64>,
    /// Forcing term, e.g. "cos(3*t)^2" or "bump(1)".
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<String>,
    /// JSON problem file {a, b, t0, c, h, window}; `-` reads stdin.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Quadrature tolerance.
    #[arg(long, env = "REFLECTODE_TOL")]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct WindowArgs {
    /// Sampling interval LO,HI.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, value_name = "LO,HI")]
    pub window: Option<Vec<f64>>,
    /// Number of grid points.
    #[arg(long, default_value_t = 101)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct GreenArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub grid: WindowArgs,
    /// Range for s (defaults to the window).
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true, value_name = "LO,HI")]
    pub s_range: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Green's function integral.
    Green,
    /// Closed forms for a = b and a = -b.
    ClosedForm,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub grid: WindowArgs,
    /// Explicit evaluation points (comma separated or repeated); overrides the grid.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    pub eval: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Method::Green)]
    pub method: Method,
    /// Write {lambda, ubar_t0, case} as JSON to this path.
    #[arg(long)]
    pub sidecar: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Half-width T of the symmetric interval [-T, T].
    #[arg(long, default_value_t = 3.0)]
    pub t_max: f64,
    /// Shooting step.
    #[arg(long, default_value_t = 1e-3)]
    pub step: f64,
    /// Compare every k-th shooting node.
    #[arg(long, default_value_t = 10)]
    pub stride: usize,
    /// Maximum accepted sup-norm difference.
    #[arg(long, default_value_t = 1e-5)]
    pub max_error: f64,
    /// Maximum accepted residual.
    #[arg(long, default_value_t = 1e-4)]
    pub max_residual: f64,
}

#[derive(Debug, Args)]
pub struct NsolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub grid: WindowArgs,
    /// Coefficients a_0..a_n of the reflected derivatives (overrides --a).
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    pub a_coeffs: Vec<f64>,
    /// Coefficients b_0..b_n of the derivatives (overrides --b).
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    pub b_coeffs: Vec<f64>,
    /// Hypothesis used to meet the initial condition: h1, h2 or h3.
    #[arg(long, default_value = "h1")]
    pub hypothesis: String,
    /// Explicit evaluation points; overrides the grid.
    #[arg(long, value_delimiter = ',', num_args = 1, allow_hyphen_values = true)]
    pub eval: Vec<f64>,
}
