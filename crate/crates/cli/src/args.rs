use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hjrsp::analysis::{Averaging, ChannelFamily};
use hjrsp::protocol::{Agent, Bob2Helpers};

/// Parses a decimal angle in radians; a trailing `pi` multiplies by π
/// (`0.25pi`, `pi`, `-1.5pi`).
pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let value = match t.strip_suffix("pi") {
        Some("") => PI,
        Some("-") => -PI,
        Some(coef) => coef.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))? * PI,
        None => t.parse::<f64>().map_err(|e| format!("`{s}`: {e}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_family(s: &str) -> Result<ChannelFamily, String> {
    s.parse()
        .map_err(|e: hjrsp::analysis::AnalysisError| e.to_string())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AgentArg {
    Bob1,
    Bob2,
    Bob3,
}

impl From<AgentArg> for Agent {
    fn from(a: AgentArg) -> Self {
        match a {
            AgentArg::Bob1 => Agent::Bob1,
            AgentArg::Bob2 => Agent::Bob2,
            AgentArg::Bob3 => Agent::Bob3,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum HelpersArg {
    Bob1,
    Bob3,
    Both,
}

impl From<HelpersArg> for Bob2Helpers {
    fn from(h: HelpersArg) -> Self {
        match h {
            HelpersArg::Bob1 => Bob2Helpers::Bob1,
            HelpersArg::Bob3 => Bob2Helpers::Bob3,
            HelpersArg::Both => Bob2Helpers::Both,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum AveragingArg {
    Weighted,
    Uniform,
}

impl From<AveragingArg> for Averaging {
    fn from(a: AveragingArg) -> Self {
        match a {
            AveragingArg::Weighted => Averaging::Weighted,
            AveragingArg::Uniform => Averaging::Uniform,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "hjrsp",
    version,
    about = "Hierarchical joint remote state preparation simulator"
)]
pub struct Cli {
    /// Cap on worker threads for parallel evaluation.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the deterministic protocol without noise and print every branch.
    Ideal(IdealArgs),
    /// Run the probabilistic protocol on a non-maximal cluster state.
    Prob(ProbArgs),
    /// Average fidelity at one noise parameter, as CSV.
    Noise(NoiseArgs),
    /// Average fidelity over a grid, as CSV.
    Sweep(SweepArgs),
    /// Write correction Tables 1-8 as CSV files.
    Tables(TablesArgs),
    /// Select the averaging convention against the closed forms.
    Calibrate(CalibrateArgs),
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    #[arg(long, value_parser = parse_angle, default_value_t = FRAC_PI_4, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, value_parser = parse_angle, default_value_t = FRAC_PI_3, allow_hyphen_values = true)]
    pub phi: f64,
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long, value_enum, default_value = "bob2")]
    pub reconstructor: AgentArg,
    #[arg(long, value_enum, default_value = "bob1")]
    pub helpers: HelpersArg,
    /// Sample a single branch instead of enumerating all of them.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ProbArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long, default_value_t = 0.8)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.6)]
    pub beta: f64,
    #[arg(long, value_enum, default_value = "bob2")]
    pub reconstructor: AgentArg,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ConventionArgs {
    /// Defaults to the calibrated convention.
    #[arg(long, value_enum)]
    pub averaging: Option<AveragingArg>,
    /// Defaults to the calibrated convention.
    #[arg(long, value_enum)]
    pub helpers: Option<HelpersArg>,
}

#[derive(Debug, Args)]
pub struct NoiseArgs {
    #[arg(long, value_parser = parse_family)]
    pub channel: ChannelFamily,
    /// Noise rate, probability, or angle (accepts the `pi` suffix).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub param: f64,
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "bob1,bob2,bob3"
    )]
    pub reconstructors: Vec<AgentArg>,
    #[command(flatten)]
    pub convention: ConventionArgs,
    /// CSV destination; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_family)]
    pub channel: ChannelFamily,
    /// Fix θ instead of sweeping [0, π].
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Fix φ instead of sweeping [0, 2π).
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub phi: Option<f64>,
    /// Angle step for swept θ and φ.
    #[arg(long, value_parser = parse_angle, default_value_t = PI / 24.0)]
    pub angle_step: f64,
    #[arg(long, default_value_t = 11)]
    pub param_steps: usize,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub param_min: Option<f64>,
    #[arg(long, value_parser = parse_angle, allow_hyphen_values = true)]
    pub param_max: Option<f64>,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "bob2,bob3")]
    pub reconstructors: Vec<AgentArg>,
    #[command(flatten)]
    pub convention: ConventionArgs,
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TablesArgs {
    #[arg(long, short, default_value = "tables")]
    pub output_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct CalibrateArgs {
    /// Also compare the collective-rotation closed forms on an n×n×n grid.
    #[arg(long)]
    pub cr_grid: Option<usize>,
}
