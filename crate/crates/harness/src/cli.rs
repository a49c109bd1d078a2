//! Command-line surface.

use std::path::PathBuf;

use airy_core::Scenario;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "airy", version, about = "Parabolic dry-point collapse in the dispersionless shallow-water system")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one solver on one scenario and write its artifacts.
    Run(RunArgs),
    /// Tabulate the short-time asymptotic coefficients against reference decimals.
    Coefficients(CoefficientArgs),
    /// Align spectral and WENO runs and report their differences and errors.
    Compare(CompareArgs),
    /// Extract F'(0) over a (Q, γ0) grid and fit the log-log slopes.
    ScalingStudy(ScalingArgs),
    /// Repeat a run over a refinement ladder and report observed orders.
    Convergence(ConvergenceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioArg {
    DryParabola,
    WetParabola,
    DoubleRiemann,
    DoubleStoker,
    Full,
}

impl From<ScenarioArg> for Scenario {
    fn from(s: ScenarioArg) -> Self {
        match s {
            ScenarioArg::DryParabola => Scenario::DryParabola,
            ScenarioArg::WetParabola => Scenario::WetParabola,
            ScenarioArg::DoubleRiemann => Scenario::DoubleRiemann,
            ScenarioArg::DoubleStoker => Scenario::DoubleStoker,
            ScenarioArg::Full => Scenario::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverArg {
    Exact,
    Spectral,
    Weno,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplittingArg {
    #[default]
    Characteristic,
    Componentwise,
}

/// Decimal float that must be a positive integer, e.g. `1024` or `1.024e3`.
fn count(s: &str) -> Result<usize, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if !(v >= 1.0 && v.fract() == 0.0 && v <= u32::MAX as f64) {
        return Err(format!("expected a positive integer, got {s}"));
    }
    Ok(v as usize)
}

/// Physical parameters and output options shared by all subcommands.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Physical {
    /// Background elevation.
    #[arg(long = "Q", default_value_t = 0.5)]
    pub q: f64,
    /// Initial parabola curvature.
    #[arg(long, default_value_t = 0.0625)]
    pub gamma0: f64,
    /// Initial parabola minimum (wet case).
    #[arg(long, default_value_t = 0.0)]
    pub mu0: f64,
    /// Double-Stoker curvature parameter; defaults to gamma0.
    #[arg(long)]
    pub g0: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Output {
    /// Output directory (created if missing).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Table format for files and stdout reports.
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for sweeps.
    #[arg(long, default_value_t = 1, value_parser = count)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RunArgs {
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    #[arg(long, value_enum)]
    pub solver: SolverArg,
    #[command(flatten)]
    pub physical: Physical,
    /// WENO grid points, or exact-solution sample points.
    #[arg(long = "M", value_parser = count)]
    pub m: Option<usize>,
    /// Spectral collocation points.
    #[arg(long, value_parser = count)]
    pub modes: Option<usize>,
    /// Time step (in τ for the spectral solver).
    #[arg(long)]
    pub dt: Option<f64>,
    /// Final time (shifted time for post-collapse families).
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Initial log shock position for the spectral solver.
    #[arg(long, allow_hyphen_values = true)]
    pub tau0: Option<f64>,
    /// Final τ for the spectral solver when no final time is given.
    #[arg(long, allow_hyphen_values = true)]
    pub tau_end: Option<f64>,
    /// Snapshot times, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub times: Vec<f64>,
    /// Half-width of the physical domain.
    #[arg(long)]
    pub x_max: Option<f64>,
    /// WENO reconstruction variables.
    #[arg(long, value_enum, default_value_t = SplittingArg::Characteristic)]
    pub splitting: SplittingArg,
    /// Keep a series row every this many steps.
    #[arg(long, value_parser = count)]
    pub stride: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CoefficientArgs {
    #[command(flatten)]
    pub physical: Physical,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long, value_enum, default_value_t = ScenarioArg::Full)]
    pub scenario: ScenarioArg,
    #[command(flatten)]
    pub physical: Physical,
    /// WENO grid points.
    #[arg(long = "M", default_value_t = 4096, value_parser = count)]
    pub m: usize,
    /// WENO time step (CFL-limited when absent).
    #[arg(long)]
    pub dt: Option<f64>,
    /// Spectral collocation points.
    #[arg(long, default_value_t = 64, value_parser = count)]
    pub modes: usize,
    /// Spectral step in τ.
    #[arg(long, default_value_t = 1e-4)]
    pub spectral_dt: f64,
    /// Initial log shock position for the spectral solver.
    #[arg(long, allow_hyphen_values = true)]
    pub tau0: Option<f64>,
    /// End of the compared window.
    #[arg(long, default_value_t = 0.05)]
    pub t_end: f64,
    /// Profile comparison times, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "0.02,0.05")]
    pub times: Vec<f64>,
    /// Half-width of the WENO domain.
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Excluded band around each shock, in grid spacings.
    #[arg(long, default_value_t = 4.0)]
    pub exclude: f64,
    #[arg(long, value_enum, default_value_t = SplittingArg::Characteristic)]
    pub splitting: SplittingArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ScalingArgs {
    /// Points per axis of the (Q, γ0) grid.
    #[arg(long, default_value_t = 4, value_parser = count)]
    pub grid: usize,
    /// Lower end of both axes.
    #[arg(long, default_value_t = 0.05)]
    pub lo: f64,
    /// Upper end of both axes.
    #[arg(long, default_value_t = 1.0)]
    pub hi: f64,
    /// Probe τ for the extraction.
    #[arg(long, default_value_t = -6.0, allow_hyphen_values = true)]
    pub tau_probe: f64,
    #[arg(long, default_value_t = 64, value_parser = count)]
    pub modes: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub dt: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub tau0: Option<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConvergenceArgs {
    #[arg(long, value_enum)]
    pub scenario: ScenarioArg,
    #[arg(long, value_enum)]
    pub solver: SolverArg,
    #[command(flatten)]
    pub physical: Physical,
    /// Refinement ladder: grid points (WENO) or collocation points (spectral).
    #[arg(long, value_delimiter = ',', value_parser = count)]
    pub levels: Vec<usize>,
    /// Time step at the first level; WENO steps scale with the grid spacing.
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub t_end: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau_end: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, value_enum, default_value_t = SplittingArg::Characteristic)]
    pub splitting: SplittingArg,
    #[command(flatten)]
    pub output: Output,
}
