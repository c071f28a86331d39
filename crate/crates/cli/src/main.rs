//! `tgquad`: recurrence coefficients and Gauss rules for `x^α e^(-zx)` on
//! `[0, 1]` from the command line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod emit;
mod run;

#[derive(Parser, Debug)]
#[command(
    name = "tgquad",
    version,
    about = "Gauss rules for the truncated Gamma weight x^α e^(-zx) on [0,1]"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Modified moments m_0..m_{2N-1} against the shifted Jacobi basis.
    Moments(PointArgs),
    /// Recurrence coefficients b_k, a_k for k < N.
    Recurrence(PointArgs),
    /// N-point Gauss rule (nodes ascending, Christoffel weights).
    Gauss(PointArgs),
    /// Coefficients on a grid of z values in [0, T].
    Sweep(SweepArgs),
    /// Maximal relative error of a run against a higher-precision run.
    Verify(VerifyArgs),
    /// Applies the Gauss rule to a polynomial and compares with the exact integral.
    Integrate(IntegrateArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Precision {
    /// Significant decimal digits of the working arithmetic.
    #[arg(long, env = "TGQUAD_DIGITS", default_value_t = 16)]
    pub digits: u32,
    /// Significant digits printed per number [default: --digits].
    #[arg(long)]
    pub sig: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the data here and print a summary to stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct PointArgs {
    /// Exponent α > -1 of the weight.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// Decay rate z ≥ 0 of the weight.
    #[arg(long, allow_hyphen_values = true)]
    pub z: String,
    /// Number of coefficient pairs, or of nodes.
    #[arg(long, short = 'n')]
    pub n: usize,
    #[command(flatten)]
    pub precision: Precision,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, short = 'n')]
    pub n: usize,
    /// Right end T of the z interval.
    #[arg(long, default_value_t = 30.0)]
    pub t_max: f64,
    /// Equidistant grid points in [0, T], ends included.
    #[arg(long, default_value_t = 90, conflicts_with = "grid_step")]
    pub grid_points: usize,
    /// Use the grid 0, h, 2h, ... ≤ T instead.
    #[arg(long)]
    pub grid_step: Option<f64>,
    #[command(flatten)]
    pub precision: Precision,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    #[arg(long, short = 'n')]
    pub n: usize,
    /// Digits of the reference run.
    #[arg(long, default_value_t = 100)]
    pub ref_digits: u32,
    #[command(flatten)]
    pub precision: Precision,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct IntegrateArgs {
    #[command(flatten)]
    pub point: PointArgs,
    /// Polynomial coefficients c_0,c_1,... of f(x) = Σ c_i x^i.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub coeffs: Vec<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run::execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.record());
            ExitCode::from(failure.exit_code())
        }
    }
}
