//! Average fidelities by exact enumeration, closed-form comparison, averaging
//! calibration and parameter sweeps.

pub mod closed_form;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, PI};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use closed_form::{closed_form, closed_form_with, PauliBob3Reading, CR_SINGULAR};

use crate::noise::ChannelSpec;
use crate::protocol::{self, Agent, Bob2Helpers, ProtocolConfig, ProtocolError, RunMode, Variant};
use crate::qsim::TargetState;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(
        "collective-rotation expression is singular in term {term} (denominator {denominator:e})"
    )]
    CrFormulaSingularity {
        term: &'static str,
        denominator: f64,
    },
    #[error(
        "no averaging convention reproduces the closed forms (best worst-case error {worst:e})"
    )]
    CalibrationAmbiguous { worst: f64 },
    #[error("average fidelity requires the deterministic variant")]
    WrongVariant,
    #[error("no tabulated branches to average")]
    NoBranches,
    #[error(transparent)]
    Protocol(#[from] ProtocolError),
}

pub type AnalysisResult<T> = Result<T, AnalysisError>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Averaging {
    /// Σ p_b F_b over tabulated branches, renormalized by their total probability.
    Weighted,
    /// Plain mean of F_b over tabulated nonzero-probability branches.
    Uniform,
}

impl Averaging {
    pub const ALL: [Averaging; 2] = [Averaging::Weighted, Averaging::Uniform];

    pub fn label(self) -> &'static str {
        match self {
            Averaging::Weighted => "weighted",
            Averaging::Uniform => "uniform",
        }
    }
}

impl fmt::Display for Averaging {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How branch fidelities are combined and which lower agents assist Bob2.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Convention {
    pub averaging: Averaging,
    pub bob2_helpers: Bob2Helpers,
}

impl Convention {
    /// The convention under which simulation reproduces the closed forms.
    pub const CALIBRATED: Convention = Convention {
        averaging: Averaging::Uniform,
        bob2_helpers: Bob2Helpers::Both,
    };

    pub fn all() -> Vec<Convention> {
        let helpers = [Bob2Helpers::Bob1, Bob2Helpers::Bob3, Bob2Helpers::Both];
        Averaging::ALL
            .iter()
            .flat_map(|&averaging| {
                helpers.iter().map(move |&bob2_helpers| Convention {
                    averaging,
                    bob2_helpers,
                })
            })
            .collect()
    }
}

impl Default for Convention {
    fn default() -> Self {
        Self::CALIBRATED
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.averaging, self.bob2_helpers.label())
    }
}

fn average_records(
    records: &[protocol::OutcomeRecord],
    averaging: Averaging,
) -> AnalysisResult<f64> {
    let tab: Vec<_> = records.iter().filter(|r| r.tabulated).collect();
    if tab.is_empty() {
        return Err(AnalysisError::NoBranches);
    }
    Ok(match averaging {
        Averaging::Uniform => tab.iter().map(|r| r.fidelity).sum::<f64>() / tab.len() as f64,
        Averaging::Weighted => {
            let p: f64 = tab.iter().map(|r| r.branch_probability).sum();
            tab.iter()
                .map(|r| r.branch_probability * r.fidelity)
                .sum::<f64>()
                / p
        }
    })
}

/// Average fidelity over all enumerated branches of a deterministic run.
pub fn average_fidelity_sim(config: &ProtocolConfig, averaging: Averaging) -> AnalysisResult<f64> {
    if !matches!(config.variant, Variant::Deterministic) {
        return Err(AnalysisError::WrongVariant);
    }
    let records = protocol::run(config, RunMode::Enumerate)?;
    average_records(&records, averaging)
}

fn config_for(
    channel: ChannelSpec,
    reconstructor: Agent,
    theta: f64,
    phi: f64,
    helpers: Bob2Helpers,
) -> ProtocolConfig {
    ProtocolConfig::deterministic(TargetState::new(theta, phi), reconstructor, channel)
        .with_helpers(helpers)
}

/// Simulated average fidelity at one point under a convention.
pub fn simulate(
    channel: ChannelSpec,
    reconstructor: Agent,
    theta: f64,
    phi: f64,
    convention: Convention,
) -> AnalysisResult<f64> {
    average_fidelity_sim(
        &config_for(channel, reconstructor, theta, phi, convention.bob2_helpers),
        convention.averaging,
    )
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PauliSpecial {
    BitFlip,
    BitPhaseFlip,
    PhaseFlip,
    Depolarizing,
}

impl PauliSpecial {
    pub fn probabilities(self, p_prime: f64) -> AnalysisResult<[f64; 4]> {
        if !(0.0..=1.0).contains(&p_prime) {
            return Err(AnalysisError::BadParameter(format!(
                "p' = {p_prime} outside [0, 1]"
            )));
        }
        let q = 1.0 - p_prime;
        Ok(match self {
            PauliSpecial::BitFlip => [p_prime, 0.0, 0.0, q],
            PauliSpecial::BitPhaseFlip => [0.0, p_prime, 0.0, q],
            PauliSpecial::PhaseFlip => [0.0, 0.0, p_prime, q],
            PauliSpecial::Depolarizing => [p_prime / 3.0, p_prime / 3.0, p_prime / 3.0, q],
        })
    }
}

/// Closed-form fidelity of a one-parameter Pauli channel.
pub fn pauli_special(
    kind: PauliSpecial,
    p_prime: f64,
    reconstructor: Agent,
    theta: f64,
    phi: f64,
) -> AnalysisResult<f64> {
    closed_form(
        &ChannelSpec::Pauli(kind.probabilities(p_prime)?),
        reconstructor,
        theta,
        phi,
    )
}

/// One-parameter channel families swept by [`sweep`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChannelFamily {
    Ideal,
    AmplitudeDamping,
    PhaseDamping,
    CollectiveDephasing,
    CollectiveRotation,
    Pauli(PauliSpecial),
}

impl ChannelFamily {
    pub fn name(self) -> &'static str {
        match self {
            ChannelFamily::Ideal => "ideal",
            ChannelFamily::AmplitudeDamping => "ad",
            ChannelFamily::PhaseDamping => "pd",
            ChannelFamily::CollectiveDephasing => "cd",
            ChannelFamily::CollectiveRotation => "cr",
            ChannelFamily::Pauli(PauliSpecial::BitFlip) => "bitflip",
            ChannelFamily::Pauli(PauliSpecial::BitPhaseFlip) => "bitphaseflip",
            ChannelFamily::Pauli(PauliSpecial::PhaseFlip) => "phaseflip",
            ChannelFamily::Pauli(PauliSpecial::Depolarizing) => "depolarizing",
        }
    }

    pub fn param_name(self) -> &'static str {
        match self {
            ChannelFamily::Ideal => "none",
            ChannelFamily::AmplitudeDamping => "eta_a",
            ChannelFamily::PhaseDamping => "eta_p",
            ChannelFamily::CollectiveDephasing => "Phi",
            ChannelFamily::CollectiveRotation => "Theta",
            ChannelFamily::Pauli(_) => "p_prime",
        }
    }

    pub fn spec(self, param: f64) -> AnalysisResult<ChannelSpec> {
        let spec = match self {
            ChannelFamily::Ideal => ChannelSpec::Ideal,
            ChannelFamily::AmplitudeDamping => ChannelSpec::AmplitudeDamping(param),
            ChannelFamily::PhaseDamping => ChannelSpec::PhaseDamping(param),
            ChannelFamily::CollectiveDephasing => ChannelSpec::CollectiveDephasing(param),
            ChannelFamily::CollectiveRotation => ChannelSpec::CollectiveRotation(param),
            ChannelFamily::Pauli(kind) => ChannelSpec::Pauli(kind.probabilities(param)?),
        };
        spec.validate()
            .map_err(|e| AnalysisError::BadParameter(e.to_string()))?;
        Ok(spec)
    }

    /// Default sweep range: rates and probabilities over [0, 1] in
    /// `steps` points, angles over [0, 2π].
    pub fn default_param_axis(self, steps: usize) -> AnalysisResult<Axis> {
        match self {
            ChannelFamily::Ideal => Axis::new(vec![0.0]),
            ChannelFamily::CollectiveDephasing | ChannelFamily::CollectiveRotation => {
                Axis::linspace(0.0, 2.0 * PI, steps)
            }
            _ => Axis::linspace(0.0, 1.0, steps),
        }
    }
}

impl fmt::Display for ChannelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelFamily {
    type Err = AnalysisError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "ideal" => ChannelFamily::Ideal,
            "ad" => ChannelFamily::AmplitudeDamping,
            "pd" => ChannelFamily::PhaseDamping,
            "cd" => ChannelFamily::CollectiveDephasing,
            "cr" => ChannelFamily::CollectiveRotation,
            "bitflip" => ChannelFamily::Pauli(PauliSpecial::BitFlip),
            "bitphaseflip" => ChannelFamily::Pauli(PauliSpecial::BitPhaseFlip),
            "phaseflip" => ChannelFamily::Pauli(PauliSpecial::PhaseFlip),
            "depolarizing" => ChannelFamily::Pauli(PauliSpecial::Depolarizing),
            other => {
                return Err(AnalysisError::BadParameter(format!(
                    "unknown channel family `{other}`"
                )))
            }
        })
    }
}

/// Finite, non-empty list of sample values along one axis.
#[derive(Clone, Debug, PartialEq)]
pub struct Axis {
    values: Vec<f64>,
}

impl Axis {
    pub fn new(values: Vec<f64>) -> AnalysisResult<Self> {
        if values.is_empty() {
            return Err(AnalysisError::BadParameter("empty axis".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(AnalysisError::BadParameter(format!(
                "non-finite axis value {v}"
            )));
        }
        Ok(Self { values })
    }

    pub fn single(value: f64) -> AnalysisResult<Self> {
        Self::new(vec![value])
    }

    /// `n` evenly spaced points from `start` to `stop` inclusive.
    pub fn linspace(start: f64, stop: f64, n: usize) -> AnalysisResult<Self> {
        match n {
            0 => Self::new(Vec::new()),
            1 => Self::new(vec![start]),
            _ => Self::new(
                (0..n)
                    .map(|i| start + (stop - start) * i as f64 / (n - 1) as f64)
                    .collect(),
            ),
        }
    }

    /// `start, start + step, …` up to `stop`, inclusive only if `include_stop`.
    pub fn stepped(start: f64, stop: f64, step: f64, include_stop: bool) -> AnalysisResult<Self> {
        if !step.is_finite() || step <= 0.0 {
            return Err(AnalysisError::BadParameter(format!(
                "step {step} must be positive"
            )));
        }
        let span = (stop - start) / step;
        let whole = (span + 1e-9).floor();
        let mut n = whole as usize;
        if include_stop || (span - whole).abs() > 1e-9 {
            n += 1;
        }
        Self::new((0..n).map(|i| start + step * i as f64).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepGrid {
    pub param: Axis,
    pub theta: Axis,
    pub phi: Axis,
}

impl SweepGrid {
    /// θ over [0, π] and φ over [0, 2π), both in steps of π/24.
    pub fn with_default_angles(param: Axis) -> Self {
        let step = PI / 24.0;
        Self {
            param,
            theta: Axis::stepped(0.0, PI, step, true).expect("static axis"),
            phi: Axis::stepped(0.0, 2.0 * PI, step, false).expect("static axis"),
        }
    }

    pub fn cells(&self) -> usize {
        self.param.len() * self.theta.len() * self.phi.len()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FidelityPoint {
    pub channel: ChannelSpec,
    pub family: ChannelFamily,
    pub param_value: f64,
    pub reconstructor: Agent,
    pub theta: f64,
    pub phi: f64,
    pub averaging: Averaging,
    pub f_sim: f64,
    pub f_closed: Option<f64>,
    pub abs_diff: Option<f64>,
}

/// Simulated and closed-form fidelity at a single point.
pub fn evaluate_point(
    family: ChannelFamily,
    param: f64,
    reconstructor: Agent,
    theta: f64,
    phi: f64,
    convention: Convention,
) -> AnalysisResult<FidelityPoint> {
    let channel = family.spec(param)?;
    let f_sim = simulate(channel, reconstructor, theta, phi, convention)?;
    let f_closed = match closed_form(&channel, reconstructor, theta, phi) {
        Ok(v) => Some(v),
        Err(AnalysisError::CrFormulaSingularity { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(FidelityPoint {
        channel,
        family,
        param_value: param,
        reconstructor,
        theta,
        phi,
        averaging: convention.averaging,
        f_sim,
        f_closed,
        abs_diff: f_closed.map(|c| (c - f_sim).abs()),
    })
}

/// Evaluates every grid cell for every reconstructor. Output is ordered by
/// parameter, then θ, then φ, then reconstructor, whatever the thread count.
pub fn sweep(
    grid: &SweepGrid,
    family: ChannelFamily,
    reconstructors: &[Agent],
    convention: Convention,
) -> AnalysisResult<Vec<FidelityPoint>> {
    if reconstructors.is_empty() {
        return Err(AnalysisError::BadParameter("no reconstructors".into()));
    }
    let mut cells = Vec::with_capacity(grid.cells() * reconstructors.len());
    for &p in grid.param.values() {
        for &t in grid.theta.values() {
            for &f in grid.phi.values() {
                for &r in reconstructors {
                    cells.push((p, t, f, r));
                }
            }
        }
    }
    cells
        .into_par_iter()
        .map(|(p, t, f, r)| evaluate_point(family, p, r, t, f, convention))
        .collect()
}

const CAL_THETA: [f64; 3] = [0.3, FRAC_PI_4, 1.2];
const CAL_PHI: [f64; 3] = [0.2, FRAC_PI_3, 2.0];

/// Fixed calibration channels, three per kind.
pub fn calibration_channels() -> Vec<ChannelSpec> {
    let mut out = Vec::new();
    for e in [0.2, 0.5, 0.8] {
        out.push(ChannelSpec::AmplitudeDamping(e));
    }
    for e in [0.2, 0.5, 0.8] {
        out.push(ChannelSpec::PhaseDamping(e));
    }
    for p in [0.4, 1.3, 2.5] {
        out.push(ChannelSpec::CollectiveDephasing(p));
    }
    for p in [
        [0.1, 0.2, 0.3, 0.4],
        [0.05, 0.15, 0.6, 0.2],
        [0.3, 0.1, 0.1, 0.5],
    ] {
        out.push(ChannelSpec::Pauli(p));
    }
    out
}

/// Worst |simulation − closed form| for one convention, channel kind and reconstructor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationEntry {
    pub convention: Convention,
    pub channel: String,
    pub reconstructor: Agent,
    pub max_abs_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub entries: Vec<CalibrationEntry>,
    /// Pauli Bob3 deviation per convention under the printed and normalized readings.
    pub pauli_bob3_readings: Vec<(Convention, f64, f64)>,
    /// Worst error per convention over the channels used for selection.
    pub worst: Vec<(Convention, f64)>,
    pub selected: Convention,
}

impl fmt::Display for CalibrationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<16} {:<8} {:<6} {:>12}",
            "convention", "channel", "recon", "max_abs_diff"
        )?;
        for e in &self.entries {
            writeln!(
                f,
                "{:<16} {:<8} {:<6} {:>12.3e}",
                e.convention.to_string(),
                e.channel,
                e.reconstructor.label(),
                e.max_abs_diff
            )?;
        }
        writeln!(f)?;
        writeln!(f, "pauli bob3 readings (printed, normalized):")?;
        for (c, printed, normalized) in &self.pauli_bob3_readings {
            writeln!(
                f,
                "  {:<16} {:>12.3e} {:>12.3e}",
                c.to_string(),
                printed,
                normalized
            )?;
        }
        writeln!(f)?;
        writeln!(f, "worst-case error per convention:")?;
        for (c, w) in &self.worst {
            writeln!(f, "  {:<16} {:>12.3e}", c.to_string(), w)?;
        }
        write!(f, "selected: {}", self.selected)
    }
}

/// Compares simulation with the closed forms on a fixed 3×3×3 grid per
/// channel kind under every convention and selects the best one.
///
/// Selection uses AD, PD and CD for both reconstructors and Pauli for Bob2.
/// The Pauli Bob3 expression is reported under both readings.
pub fn calibrate() -> AnalysisResult<CalibrationReport> {
    let conventions = Convention::all();
    let channels = calibration_channels();
    let mut jobs = Vec::new();
    for (ci, _) in conventions.iter().enumerate() {
        for (ki, _) in channels.iter().enumerate() {
            for r in [Agent::Bob2, Agent::Bob3] {
                for t in CAL_THETA {
                    for p in CAL_PHI {
                        jobs.push((ci, ki, r, t, p));
                    }
                }
            }
        }
    }
    let diffs: Vec<(usize, usize, Agent, f64, f64)> = jobs
        .into_par_iter()
        .map(|(ci, ki, r, t, p)| {
            let ch = channels[ki];
            let sim = simulate(ch, r, t, p, conventions[ci])?;
            let printed = closed_form_with(&ch, r, t, p, PauliBob3Reading::Printed)?;
            let normalized = closed_form_with(&ch, r, t, p, PauliBob3Reading::Normalized)?;
            Ok((ci, ki, r, (sim - printed).abs(), (sim - normalized).abs()))
        })
        .collect::<AnalysisResult<_>>()?;

    let kinds = ["ad", "pd", "cd", "pauli"];
    let mut entries = Vec::new();
    let mut readings = Vec::new();
    let mut worst = Vec::new();
    for (ci, &convention) in conventions.iter().enumerate() {
        let mut conv_worst = 0.0f64;
        for kind in kinds {
            for r in [Agent::Bob2, Agent::Bob3] {
                let max = diffs
                    .iter()
                    .filter(|d| d.0 == ci && channels[d.1].kind() == kind && d.2 == r)
                    .map(|d| d.3)
                    .fold(0.0, f64::max);
                if !(kind == "pauli" && r == Agent::Bob3) {
                    conv_worst = conv_worst.max(max);
                }
                entries.push(CalibrationEntry {
                    convention,
                    channel: kind.into(),
                    reconstructor: r,
                    max_abs_diff: max,
                });
            }
        }
        let pauli3 = || {
            diffs
                .iter()
                .filter(|d| d.0 == ci && channels[d.1].kind() == "pauli" && d.2 == Agent::Bob3)
        };
        readings.push((
            convention,
            pauli3().map(|d| d.3).fold(0.0, f64::max),
            pauli3().map(|d| d.4).fold(0.0, f64::max),
        ));
        worst.push((convention, conv_worst));
    }
    let &(selected, best) = worst
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one convention");
    if best >= 1e-4 {
        return Err(AnalysisError::CalibrationAmbiguous { worst: best });
    }
    Ok(CalibrationReport {
        entries,
        pauli_bob3_readings: readings,
        worst,
        selected,
    })
}

/// Runs [`calibrate`] and returns only the selected convention.
pub fn calibrate_averaging() -> AnalysisResult<Convention> {
    Ok(calibrate()?.selected)
}

/// Collective-rotation closed form against simulation at one point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrComparison {
    pub big_theta: f64,
    pub theta: f64,
    pub phi: f64,
    pub reconstructor: Agent,
    pub f_sim: f64,
    pub f_closed: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrReport {
    pub points: Vec<CrComparison>,
    pub max_dev_bob2: f64,
    pub max_dev_bob3: f64,
    pub singular_cells: usize,
    /// Largest |F(helper Bob1) − F(helper Bob3)| for Bob2 under uniform averaging.
    pub helper_asymmetry: f64,
}

impl fmt::Display for CrReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "points: {}", self.points.len())?;
        writeln!(f, "singular cells skipped: {}", self.singular_cells)?;
        writeln!(f, "max |f_sim - f_closed| bob2: {:.6e}", self.max_dev_bob2)?;
        writeln!(f, "max |f_sim - f_closed| bob3: {:.6e}", self.max_dev_bob3)?;
        write!(
            f,
            "helper asymmetry (bob2, bob1 vs bob3 helper): {:.3e}",
            self.helper_asymmetry
        )
    }
}

/// Compares the collective-rotation closed forms with simulation over an
/// `n`×`n`×`n` grid in (Θ, θ, φ) under the calibrated convention.
pub fn cr_report(n: usize) -> AnalysisResult<CrReport> {
    let big = Axis::linspace(0.1, PI - 0.1, n)?;
    let theta = Axis::linspace(0.1, PI - 0.1, n)?;
    let phi = Axis::linspace(0.1, 2.0 * PI - 0.1, n)?;
    let mut jobs = Vec::new();
    for &b in big.values() {
        for &t in theta.values() {
            for &p in phi.values() {
                jobs.push((b, t, p));
            }
        }
    }
    let rows: Vec<(CrComparison, CrComparison, f64)> = jobs
        .into_par_iter()
        .map(|(b, t, p)| {
            let ch = ChannelSpec::CollectiveRotation(b);
            let cmp = |r: Agent| -> AnalysisResult<CrComparison> {
                let f_sim = simulate(ch, r, t, p, Convention::CALIBRATED)?;
                let f_closed = match closed_form(&ch, r, t, p) {
                    Ok(v) => Some(v),
                    Err(AnalysisError::CrFormulaSingularity { .. }) => None,
                    Err(e) => return Err(e),
                };
                Ok(CrComparison {
                    big_theta: b,
                    theta: t,
                    phi: p,
                    reconstructor: r,
                    f_sim,
                    f_closed,
                })
            };
            let uniform = |h| {
                simulate(
                    ch,
                    Agent::Bob2,
                    t,
                    p,
                    Convention {
                        averaging: Averaging::Uniform,
                        bob2_helpers: h,
                    },
                )
            };
            let asym = (uniform(Bob2Helpers::Bob1)? - uniform(Bob2Helpers::Bob3)?).abs();
            Ok((cmp(Agent::Bob2)?, cmp(Agent::Bob3)?, asym))
        })
        .collect::<AnalysisResult<_>>()?;

    let dev = |c: &CrComparison| c.f_closed.map(|v| (v - c.f_sim).abs());
    let mut report = CrReport {
        points: Vec::with_capacity(rows.len() * 2),
        max_dev_bob2: 0.0,
        max_dev_bob3: 0.0,
        singular_cells: 0,
        helper_asymmetry: 0.0,
    };
    for (b2, b3, asym) in rows {
        match dev(&b2) {
            Some(d) => report.max_dev_bob2 = report.max_dev_bob2.max(d),
            None => report.singular_cells += 1,
        }
        match dev(&b3) {
            Some(d) => report.max_dev_bob3 = report.max_dev_bob3.max(d),
            None => report.singular_cells += 1,
        }
        report.helper_asymmetry = report.helper_asymmetry.max(asym);
        report.points.push(b2);
        report.points.push(b3);
    }
    Ok(report)
}

#[cfg(test)]
mod tests;
