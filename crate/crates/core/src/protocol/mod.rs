//! Measurement feed-forward execution of the deterministic and probabilistic
//! protocols, by exhaustive branch enumeration or by sampling one trajectory.

mod tables;

pub use tables::{
    all_tables, correction_lookup, table, CorrectionKey, CorrectionTable, Pauli, TableRecord,
    TableRow, UnitaryChoice,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::noise::{apply_noise, ChannelSpec, NoiseError};
use crate::qsim::{
    fidelity_against, gates, tol, u_basis, unitarity_defect, v_basis, CMatrix, DensityMatrix,
    Measurement, Outcome, PureState, QubitIndex, Register, SimError, SingleQubitBasis, TargetState,
    C64,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProtocolError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("key not in correction table: {0}")]
    KeyNotInTable(String),
    #[error("noise on the probabilistic protocol is not supported")]
    UnsupportedNoisyProbabilistic,
    #[error("operation requires the {0} variant")]
    WrongVariant(&'static str),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Noise(#[from] NoiseError),
}

pub type ProtocolResult<T> = Result<T, ProtocolError>;

/// The three receivers.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Agent {
    Bob1,
    Bob2,
    Bob3,
}

impl Agent {
    pub const ALL: [Agent; 3] = [Agent::Bob1, Agent::Bob2, Agent::Bob3];

    pub fn qubit(self) -> QubitIndex {
        match self {
            Agent::Bob1 => QubitIndex::R1,
            Agent::Bob2 => QubitIndex::R2,
            Agent::Bob3 => QubitIndex::R3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Agent::Bob1 => "bob1",
            Agent::Bob2 => "bob2",
            Agent::Bob3 => "bob3",
        }
    }
}

impl std::fmt::Display for Agent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Which lower agents measure for Bob2. With `Both`, R1 and R3 are measured
/// and branches where they disagree have no table entry.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bob2Helpers {
    #[default]
    Bob1,
    Bob3,
    Both,
}

impl Bob2Helpers {
    pub fn label(self) -> &'static str {
        match self {
            Bob2Helpers::Bob1 => "bob1",
            Bob2Helpers::Bob3 => "bob3",
            Bob2Helpers::Both => "both",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum Variant {
    Deterministic,
    /// Amplitudes of the non-maximally entangled resource.
    Probabilistic {
        alpha: f64,
        beta: f64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolConfig {
    pub target: TargetState,
    pub reconstructor: Agent,
    pub variant: Variant,
    pub channel: ChannelSpec,
    pub bob2_helpers: Bob2Helpers,
}

impl ProtocolConfig {
    pub fn deterministic(target: TargetState, reconstructor: Agent, channel: ChannelSpec) -> Self {
        Self {
            target,
            reconstructor,
            variant: Variant::Deterministic,
            channel,
            bob2_helpers: Bob2Helpers::default(),
        }
    }

    pub fn probabilistic(target: TargetState, reconstructor: Agent, alpha: f64, beta: f64) -> Self {
        Self {
            target,
            reconstructor,
            variant: Variant::Probabilistic { alpha, beta },
            channel: ChannelSpec::Ideal,
            bob2_helpers: Bob2Helpers::default(),
        }
    }

    pub fn with_helpers(mut self, helpers: Bob2Helpers) -> Self {
        self.bob2_helpers = helpers;
        self
    }

    pub fn validate(&self) -> ProtocolResult<()> {
        let t = self.target;
        if !t.theta.is_finite() || !t.phi.is_finite() {
            return Err(ProtocolError::InvalidConfig(
                "target angles must be finite".into(),
            ));
        }
        self.channel.validate()?;
        if let Variant::Probabilistic { alpha, beta } = self.variant {
            check_amplitudes(alpha, beta).map_err(|e| match e {
                ProtocolError::BadParameter(m) => ProtocolError::InvalidConfig(m),
                other => other,
            })?;
            if self.channel != ChannelSpec::Ideal {
                return Err(ProtocolError::UnsupportedNoisyProbabilistic);
            }
        }
        Ok(())
    }

    /// Notes about valid but degenerate settings.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut notes = Vec::new();
        if let Variant::Probabilistic { alpha, beta } = self.variant {
            if (alpha - beta).abs() <= 1e-12 {
                notes.push(
                    "alpha = beta: the resource is maximally entangled and every branch succeeds"
                        .into(),
                );
            }
        }
        notes
    }
}

/// `α² + β² = 1`, `α > 0` and `0 < β ≤ α`.
fn check_amplitudes(alpha: f64, beta: f64) -> ProtocolResult<()> {
    let bad = |m: String| Err(ProtocolError::BadParameter(m));
    if !alpha.is_finite() || !beta.is_finite() {
        return bad("alpha and beta must be finite".into());
    }
    let norm = alpha * alpha + beta * beta;
    if (norm - 1.0).abs() > tol::EXACT {
        return bad(format!("alpha^2 + beta^2 = {norm}, expected 1"));
    }
    if alpha <= 0.0 || beta <= 0.0 {
        return bad("alpha and beta must be positive".into());
    }
    if beta > alpha + tol::EXACT {
        return bad(format!("beta {beta} exceeds alpha {alpha}"));
    }
    Ok(())
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HelperBasis {
    Computational,
    PlusMinus,
}

impl HelperBasis {
    pub fn basis(self) -> SingleQubitBasis {
        match self {
            HelperBasis::Computational => SingleQubitBasis::computational(),
            HelperBasis::PlusMinus => SingleQubitBasis::plus_minus(),
        }
    }
}

/// A helper's announced result.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HelperOutcome {
    pub agent: Agent,
    pub basis: HelperBasis,
    pub outcome: Outcome,
}

impl HelperOutcome {
    /// `+`/`-` or `0`/`1`.
    pub fn symbol(&self) -> &'static str {
        match (self.basis, self.outcome) {
            (HelperBasis::PlusMinus, Outcome::Zero) => "+",
            (HelperBasis::PlusMinus, Outcome::One) => "-",
            (HelperBasis::Computational, Outcome::Zero) => "0",
            (HelperBasis::Computational, Outcome::One) => "1",
        }
    }
}

/// One branch of a protocol run.
#[derive(Clone, Debug)]
pub struct OutcomeRecord {
    pub alice1: Outcome,
    pub alice2: Outcome,
    pub helpers: Vec<HelperOutcome>,
    pub ancilla: Option<Outcome>,
    pub correction: Option<Pauli>,
    pub unitary_used: Option<UnitaryChoice>,
    pub branch_probability: f64,
    /// Normalized receiver state after any correction.
    pub receiver_state: DensityMatrix,
    /// `⟨ξ|ρ|ξ⟩` on the normalized receiver state.
    pub fidelity: f64,
    /// Tabulated and, for the probabilistic variant, ancilla found in `|0⟩`.
    pub success: bool,
    /// The helper outcomes appear in a correction table.
    pub tabulated: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum RunMode {
    Enumerate,
    Sample { seed: u64 },
}

/// `|C⟩ = ½(|00000⟩ + |00111⟩ + |11010⟩ + |11101⟩)`
pub fn build_cluster_state() -> PureState {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    build_nonmax_cluster(h, h).expect("maximal amplitudes are normalized")
}

/// `(α(|00000⟩ + |00111⟩) + β(|11010⟩ + |11101⟩))/√2`
pub fn build_nonmax_cluster(alpha: f64, beta: f64) -> Result<PureState, SimError> {
    let norm = alpha * alpha + beta * beta;
    if !norm.is_finite() || (norm - 1.0).abs() > tol::EXACT {
        return Err(SimError::NonUnitInput(norm));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![C64::new(0.0, 0.0); 32];
    amps[0b00000] = C64::new(alpha * s, 0.0);
    amps[0b00111] = C64::new(alpha * s, 0.0);
    amps[0b11010] = C64::new(beta * s, 0.0);
    amps[0b11101] = C64::new(beta * s, 0.0);
    PureState::from_amplitudes(amps)
}

/// `P(2φ) = diag(1, e^{2iφ})`
pub fn phase_gate(phi: f64) -> CMatrix {
    gates::phase(2.0 * phi)
}

/// The receiver/ancilla unitaries `(U0, U1)`, receiver as the high bit.
pub fn u0_u1_unitaries(alpha: f64, beta: f64) -> ProtocolResult<(CMatrix, CMatrix)> {
    check_amplitudes(alpha, beta)?;
    let r = (beta / alpha).min(1.0);
    let s = (1.0 - r * r).max(0.0).sqrt();
    let c = |x: f64| C64::new(x, 0.0);
    #[rustfmt::skip]
    let u0 = CMatrix::from_row_slice(4, 4, &[
        c(r), c(s),  c(0.0), c(0.0),
        c(0.0), c(0.0), c(0.0), c(-1.0),
        c(0.0), c(0.0), c(1.0), c(0.0),
        c(s), c(-r), c(0.0), c(0.0),
    ]);
    let u1 = &u0 * gates::pauli_x().kronecker(&gates::identity());
    for u in [&u0, &u1] {
        let d = unitarity_defect(u);
        if d > tol::UNITARY {
            return Err(SimError::NonUnitary(d).into());
        }
    }
    Ok((u0, u1))
}

/// The shared state as the parties receive it.
pub fn initial_state(config: &ProtocolConfig) -> ProtocolResult<DensityMatrix> {
    match config.variant {
        Variant::Deterministic => {
            let rho = DensityMatrix::from_pure(&build_cluster_state());
            Ok(apply_noise(&rho, &config.channel)?)
        }
        Variant::Probabilistic { alpha, beta } => {
            if config.channel != ChannelSpec::Ideal {
                return Err(ProtocolError::UnsupportedNoisyProbabilistic);
            }
            Ok(DensityMatrix::from_pure(&build_nonmax_cluster(
                alpha, beta,
            )?))
        }
    }
}

/// Alice1's measurement, the conditional phase gate and Alice2's measurement,
/// forced to the given outcomes. Returns the joint probability and the
/// normalized post-measurement state.
pub fn alice_stage(
    rho: &DensityMatrix,
    target: &TargetState,
    alice1: Outcome,
    alice2: Outcome,
) -> ProtocolResult<(f64, DensityMatrix)> {
    let m1 = rho.measure_forced(QubitIndex::S1, &u_basis(target.a(), target.b())?, alice1)?;
    let state = after_alice1(m1.post_state, m1.outcome, target)?;
    let m2 = state.measure_forced(QubitIndex::S2, &v_basis(target.phi), alice2)?;
    Ok((m1.probability * m2.probability, m2.post_state))
}

fn after_alice1(
    state: DensityMatrix,
    outcome: Outcome,
    target: &TargetState,
) -> ProtocolResult<DensityMatrix> {
    Ok(match outcome {
        Outcome::Zero => state.apply_unitary(&phase_gate(target.phi), &[QubitIndex::S2])?,
        Outcome::One => state,
    })
}

/// Helper measurements in order, for the configured reconstructor.
pub fn helper_plan(config: &ProtocolConfig) -> Vec<(Agent, HelperBasis)> {
    use HelperBasis::{Computational, PlusMinus};
    match config.reconstructor {
        Agent::Bob2 => match config.bob2_helpers {
            Bob2Helpers::Bob1 => vec![(Agent::Bob1, Computational)],
            Bob2Helpers::Bob3 => vec![(Agent::Bob3, Computational)],
            Bob2Helpers::Both => vec![(Agent::Bob1, Computational), (Agent::Bob3, Computational)],
        },
        Agent::Bob3 => vec![(Agent::Bob1, PlusMinus), (Agent::Bob2, Computational)],
        Agent::Bob1 => vec![(Agent::Bob3, PlusMinus), (Agent::Bob2, Computational)],
    }
}

/// Either every reachable outcome or one sampled outcome of a measurement.
enum Brancher {
    Enumerate,
    Sample(Box<ChaCha8Rng>),
}

impl Brancher {
    fn branch(
        &mut self,
        rho: &DensityMatrix,
        q: QubitIndex,
        basis: &SingleQubitBasis,
    ) -> ProtocolResult<Vec<Measurement<DensityMatrix>>> {
        match self {
            Brancher::Enumerate => {
                let mut out = Vec::with_capacity(2);
                for o in Outcome::BOTH {
                    match rho.measure_forced(q, basis, o) {
                        Ok(m) => out.push(m),
                        Err(SimError::ZeroProbabilityBranch(_)) => {}
                        Err(e) => return Err(e.into()),
                    }
                }
                Ok(out)
            }
            Brancher::Sample(rng) => Ok(vec![rho.measure_sampled(q, basis, &mut **rng)?]),
        }
    }
}

/// State after every announced outcome, before the reconstructor acts.
struct Leaf {
    alice1: Outcome,
    alice2: Outcome,
    helpers: Vec<HelperOutcome>,
    probability: f64,
    state: DensityMatrix,
}

fn collect_leaves(config: &ProtocolConfig, brancher: &mut Brancher) -> ProtocolResult<Vec<Leaf>> {
    let target = config.target;
    let rho = initial_state(config)?;
    let plan = helper_plan(config);
    let u = u_basis(target.a(), target.b())?;
    let v = v_basis(target.phi);
    let mut leaves = Vec::new();
    for m1 in brancher.branch(&rho, QubitIndex::S1, &u)? {
        let state = after_alice1(m1.post_state, m1.outcome, &target)?;
        for m2 in brancher.branch(&state, QubitIndex::S2, &v)? {
            let mut frontier = vec![(Vec::new(), m1.probability * m2.probability, m2.post_state)];
            for &(agent, hb) in &plan {
                let mut next = Vec::new();
                for (helpers, p, st) in frontier {
                    for m in brancher.branch(&st, agent.qubit(), &hb.basis())? {
                        let mut h: Vec<HelperOutcome> = helpers.clone();
                        h.push(HelperOutcome {
                            agent,
                            basis: hb,
                            outcome: m.outcome,
                        });
                        next.push((h, p * m.probability, m.post_state));
                    }
                }
                frontier = next;
            }
            for (helpers, probability, state) in frontier {
                leaves.push(Leaf {
                    alice1: m1.outcome,
                    alice2: m2.outcome,
                    helpers,
                    probability,
                    state,
                });
            }
        }
    }
    Ok(leaves)
}

/// Table key for a leaf, or `None` when the helper outcomes are off-table.
fn leaf_key(config: &ProtocolConfig, leaf: &Leaf) -> Option<CorrectionKey> {
    let find = |b: HelperBasis| {
        leaf.helpers
            .iter()
            .find(|h| h.basis == b)
            .map(|h| h.outcome)
    };
    let computational = find(HelperBasis::Computational)?;
    let agrees = leaf
        .helpers
        .iter()
        .filter(|h| h.basis == HelperBasis::Computational && h.agent != Agent::Bob2)
        .all(|h| h.outcome == computational);
    if !agrees {
        return None;
    }
    Some(CorrectionKey {
        probabilistic: matches!(config.variant, Variant::Probabilistic { .. }),
        reconstructor: config.reconstructor,
        alice1: leaf.alice1,
        alice2: leaf.alice2,
        plus_minus: find(HelperBasis::PlusMinus),
        computational,
    })
}

fn correct(rho: DensityMatrix, pauli: Pauli) -> ProtocolResult<DensityMatrix> {
    Ok(rho.apply_unitary(&pauli.matrix(), &[QubitIndex(0)])?)
}

fn finish_deterministic(config: &ProtocolConfig, leaf: Leaf) -> ProtocolResult<OutcomeRecord> {
    let target = config.target.ket();
    let mut receiver = leaf.state.partial_trace(&[config.reconstructor.qubit()])?;
    let key = leaf_key(config, &leaf);
    let mut correction = None;
    if let Some(key) = key {
        let row = correction_lookup(&key)?;
        receiver = correct(receiver, row.correction)?;
        correction = Some(row.correction);
    }
    Ok(OutcomeRecord {
        alice1: leaf.alice1,
        alice2: leaf.alice2,
        fidelity: fidelity_against(&receiver, &target)?,
        helpers: leaf.helpers,
        ancilla: None,
        correction,
        unitary_used: None,
        branch_probability: leaf.probability,
        receiver_state: receiver,
        success: key.is_some(),
        tabulated: key.is_some(),
    })
}

fn finish_probabilistic(
    config: &ProtocolConfig,
    leaf: Leaf,
    brancher: &mut Brancher,
    (u0, u1): &(CMatrix, CMatrix),
) -> ProtocolResult<Vec<OutcomeRecord>> {
    let target = config.target.ket();
    let receiver_q = config.reconstructor.qubit();
    let Some(key) = leaf_key(config, &leaf) else {
        let receiver = leaf.state.partial_trace(&[receiver_q])?;
        return Ok(vec![OutcomeRecord {
            alice1: leaf.alice1,
            alice2: leaf.alice2,
            fidelity: fidelity_against(&receiver, &target)?,
            helpers: leaf.helpers,
            ancilla: None,
            correction: None,
            unitary_used: None,
            branch_probability: leaf.probability,
            receiver_state: receiver,
            success: false,
            tabulated: false,
        }]);
    };
    let row = correction_lookup(&key)?;
    let choice = row.unitary.expect("probabilistic rows name a unitary");
    let u = match choice {
        UnitaryChoice::U0 => u0,
        UnitaryChoice::U1 => u1,
    };
    let ancilla = DensityMatrix::from_pure(&PureState::zero(1));
    let joint = leaf
        .state
        .tensor(&ancilla)
        .apply_unitary(u, &[receiver_q, QubitIndex::ANCILLA])?;
    let mut out = Vec::new();
    for m in brancher.branch(
        &joint,
        QubitIndex::ANCILLA,
        &SingleQubitBasis::computational(),
    )? {
        let mut receiver = m.post_state.partial_trace(&[receiver_q])?;
        let success = m.outcome == Outcome::Zero;
        if success {
            receiver = correct(receiver, row.correction)?;
        }
        out.push(OutcomeRecord {
            alice1: leaf.alice1,
            alice2: leaf.alice2,
            helpers: leaf.helpers.clone(),
            ancilla: Some(m.outcome),
            correction: success.then_some(row.correction),
            unitary_used: Some(choice),
            branch_probability: leaf.probability * m.probability,
            fidelity: fidelity_against(&receiver, &target)?,
            receiver_state: receiver,
            success,
            tabulated: true,
        });
    }
    Ok(out)
}

fn brancher_for(mode: RunMode) -> Brancher {
    match mode {
        RunMode::Enumerate => Brancher::Enumerate,
        RunMode::Sample { seed } => Brancher::Sample(Box::new(ChaCha8Rng::seed_from_u64(seed))),
    }
}

pub fn run_deterministic(
    config: &ProtocolConfig,
    mode: RunMode,
) -> ProtocolResult<Vec<OutcomeRecord>> {
    if config.variant != Variant::Deterministic {
        return Err(ProtocolError::WrongVariant("deterministic"));
    }
    config.validate()?;
    let mut brancher = brancher_for(mode);
    collect_leaves(config, &mut brancher)?
        .into_iter()
        .map(|leaf| finish_deterministic(config, leaf))
        .collect()
}

pub fn run_probabilistic(
    config: &ProtocolConfig,
    mode: RunMode,
) -> ProtocolResult<Vec<OutcomeRecord>> {
    let Variant::Probabilistic { alpha, beta } = config.variant else {
        return Err(ProtocolError::WrongVariant("probabilistic"));
    };
    config.validate()?;
    let unitaries = u0_u1_unitaries(alpha, beta)?;
    let mut brancher = brancher_for(mode);
    let mut out = Vec::new();
    for leaf in collect_leaves(config, &mut brancher)? {
        out.extend(finish_probabilistic(
            config,
            leaf,
            &mut brancher,
            &unitaries,
        )?);
    }
    Ok(out)
}

/// Dispatches on the configured variant.
pub fn run(config: &ProtocolConfig, mode: RunMode) -> ProtocolResult<Vec<OutcomeRecord>> {
    match config.variant {
        Variant::Deterministic => run_deterministic(config, mode),
        Variant::Probabilistic { .. } => run_probabilistic(config, mode),
    }
}

/// Total probability of success-flagged branches.
pub fn success_probability(records: &[OutcomeRecord]) -> f64 {
    records
        .iter()
        .filter(|r| r.success)
        .map(|r| r.branch_probability)
        .sum()
}
