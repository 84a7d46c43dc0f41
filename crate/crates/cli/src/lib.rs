//! Command-line front end for the `hjrsp` simulator.

pub mod args;
pub mod output;

use std::f64::consts::PI;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use hjrsp::analysis::{self, AnalysisError, Axis, Convention, FidelityPoint, SweepGrid};
use hjrsp::noise::ChannelSpec;
use hjrsp::protocol::{self, Agent, ProtocolConfig, ProtocolError, RunMode};
use hjrsp::qsim::TargetState;
use thiserror::Error;

use args::{Cli, Command, ConventionArgs};

/// Largest tolerated deviation from unit fidelity in an ideal branch.
const IDEAL_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
    #[error("tolerance: {0}")]
    Tolerance(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 3,
            CliError::Tolerance(_) => 4,
        }
    }
}

impl From<ProtocolError> for CliError {
    fn from(e: ProtocolError) -> Self {
        match e {
            ProtocolError::InvalidConfig(_)
            | ProtocolError::BadParameter(_)
            | ProtocolError::UnsupportedNoisyProbabilistic => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<AnalysisError> for CliError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::BadParameter(_) => CliError::Usage(e.to_string()),
            AnalysisError::CalibrationAmbiguous { .. } => CliError::Tolerance(e.to_string()),
            AnalysisError::Protocol(p) => p.into(),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parses `argv`, runs the command and maps the outcome to an exit status.
pub fn main_with_args<I, T>(argv: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    match execute(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hjrsp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

pub fn execute<W: Write>(cli: Cli, out: &mut W) -> CliResult<()> {
    match cli.threads {
        Some(0) => Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            let mut buf = Vec::new();
            let result = pool.install(|| dispatch(cli.command, &mut buf));
            out.write_all(&buf)?;
            result
        }
        None => dispatch(cli.command, out),
    }
}

fn dispatch<W: Write>(command: Command, out: &mut W) -> CliResult<()> {
    match command {
        Command::Ideal(a) => {
            let target = TargetState::new(a.target.theta, a.target.phi);
            let config =
                ProtocolConfig::deterministic(target, a.reconstructor.into(), ChannelSpec::Ideal)
                    .with_helpers(a.helpers.into());
            let mode = a
                .seed
                .map_or(RunMode::Enumerate, |seed| RunMode::Sample { seed });
            let records = protocol::run(&config, mode)?;
            output::write_branches(&mut *out, &records)?;
            let total: f64 = records.iter().map(|r| r.branch_probability).sum();
            let worst = records
                .iter()
                .map(|r| (1.0 - r.fidelity).abs())
                .fold(0.0, f64::max);
            writeln!(out, "branches: {}", records.len())?;
            writeln!(out, "total probability: {total:.6}")?;
            writeln!(out, "max |1 - fidelity|: {worst:.3e}")?;
            if worst > IDEAL_TOL {
                return Err(CliError::Tolerance(format!(
                    "ideal branch fidelity off by {worst:e}"
                )));
            }
            Ok(())
        }
        Command::Prob(a) => {
            let target = TargetState::new(a.target.theta, a.target.phi);
            let config =
                ProtocolConfig::probabilistic(target, a.reconstructor.into(), a.alpha, a.beta);
            config.validate()?;
            for note in config.diagnostics() {
                writeln!(out, "note: {note}")?;
            }
            let mode = a
                .seed
                .map_or(RunMode::Enumerate, |seed| RunMode::Sample { seed });
            let records = protocol::run(&config, mode)?;
            output::write_branches(&mut *out, &records)?;
            let worst = records
                .iter()
                .filter(|r| r.success)
                .map(|r| (1.0 - r.fidelity).abs())
                .fold(0.0, f64::max);
            writeln!(out, "branches: {}", records.len())?;
            writeln!(
                out,
                "success probability: {:.6}",
                protocol::success_probability(&records)
            )?;
            writeln!(out, "max |1 - fidelity| on success: {worst:.3e}")?;
            if worst > IDEAL_TOL {
                return Err(CliError::Tolerance(format!(
                    "success branch fidelity off by {worst:e}"
                )));
            }
            Ok(())
        }
        Command::Noise(a) => {
            let grid = SweepGrid {
                param: Axis::single(a.param)?,
                theta: Axis::single(a.target.theta)?,
                phi: Axis::single(a.target.phi)?,
            };
            let agents = agents(&a.reconstructors)?;
            let points = analysis::sweep(&grid, a.channel, &agents, convention(&a.convention))?;
            emit(a.output.as_deref(), out, &points)
        }
        Command::Sweep(a) => {
            let param = match (a.param_min, a.param_max) {
                (None, None) => a.channel.default_param_axis(a.param_steps)?,
                (lo, hi) => {
                    let default = a.channel.default_param_axis(2)?;
                    let lo = lo.unwrap_or(default.values()[0]);
                    let hi = hi.unwrap_or(*default.values().last().unwrap_or(&lo));
                    Axis::linspace(lo, hi, a.param_steps)?
                }
            };
            let grid = SweepGrid {
                param,
                theta: match a.theta {
                    Some(t) => Axis::single(t)?,
                    None => Axis::stepped(0.0, PI, a.angle_step, true)?,
                },
                phi: match a.phi {
                    Some(p) => Axis::single(p)?,
                    None => Axis::stepped(0.0, 2.0 * PI, a.angle_step, false)?,
                },
            };
            let agents = agents(&a.reconstructors)?;
            let points = analysis::sweep(&grid, a.channel, &agents, convention(&a.convention))?;
            emit(a.output.as_deref(), out, &points)
        }
        Command::Tables(a) => {
            fs::create_dir_all(&a.output_dir)?;
            for t in protocol::all_tables() {
                let path = a.output_dir.join(format!("table{}.csv", t.number));
                let rows: Vec<_> = t.rows.iter().map(|r| r.record()).collect();
                output::write_table(BufWriter::new(File::create(&path)?), &rows)?;
                writeln!(out, "{} ({} rows)", path.display(), rows.len())?;
            }
            Ok(())
        }
        Command::Calibrate(a) => {
            let report = analysis::calibrate()?;
            writeln!(out, "{report}")?;
            if let Some(n) = a.cr_grid {
                if n == 0 {
                    return Err(CliError::Usage("--cr-grid must be at least 1".into()));
                }
                writeln!(out)?;
                writeln!(out, "collective rotation, {n}x{n}x{n} grid")?;
                writeln!(out, "{}", analysis::cr_report(n)?)?;
            }
            Ok(())
        }
    }
}

fn agents(list: &[args::AgentArg]) -> CliResult<Vec<Agent>> {
    if list.is_empty() {
        return Err(CliError::Usage("--reconstructors is empty".into()));
    }
    Ok(list.iter().map(|&a| a.into()).collect())
}

fn convention(c: &ConventionArgs) -> Convention {
    let mut conv = Convention::CALIBRATED;
    if let Some(a) = c.averaging {
        conv.averaging = a.into();
    }
    if let Some(h) = c.helpers {
        conv.bob2_helpers = h.into();
    }
    conv
}

fn emit<W: Write>(path: Option<&Path>, out: &mut W, points: &[FidelityPoint]) -> CliResult<()> {
    match path {
        Some(p) => output::write_points(BufWriter::new(File::create(p)?), points)?,
        None => output::write_points(&mut *out, points)?,
    }
    Ok(())
}
