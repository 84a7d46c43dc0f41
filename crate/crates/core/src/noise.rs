//! Travel-qubit decoherence: per-qubit Kraus channels and collective unitaries.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qsim::{
    gates, tol, unitarity_defect, CMatrix, DensityMatrix, QubitIndex, Register, SimError, C64,
};

/// Qubits that leave the preparer: S2, R1, R2, R3. S1 stays home.
pub const TRAVEL_QUBITS: [QubitIndex; 4] = [
    QubitIndex::S2,
    QubitIndex::R1,
    QubitIndex::R2,
    QubitIndex::R3,
];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NoiseError {
    #[error("bad channel parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}

pub type NoiseResult<T> = Result<T, NoiseError>;

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum ChannelSpec {
    Ideal,
    /// Decay rate `η ∈ [0, 1]`.
    AmplitudeDamping(f64),
    /// Dephasing rate `η ∈ [0, 1]`.
    PhaseDamping(f64),
    /// Collective phase `Φ`.
    CollectiveDephasing(f64),
    /// Collective rotation angle `Θ`.
    CollectiveRotation(f64),
    /// Probabilities of X, Y, Z and I.
    Pauli([f64; 4]),
}

impl ChannelSpec {
    pub fn validate(&self) -> NoiseResult<()> {
        let bad = |m: String| Err(NoiseError::BadParameter(m));
        match *self {
            ChannelSpec::Ideal => Ok(()),
            ChannelSpec::AmplitudeDamping(e) | ChannelSpec::PhaseDamping(e) => {
                if !(0.0..=1.0).contains(&e) {
                    return bad(format!("rate {e} outside [0, 1]"));
                }
                Ok(())
            }
            ChannelSpec::CollectiveDephasing(a) | ChannelSpec::CollectiveRotation(a) => {
                if !a.is_finite() {
                    return bad(format!("angle {a} is not finite"));
                }
                Ok(())
            }
            ChannelSpec::Pauli(p) => {
                if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return bad(format!("probabilities {p:?} must be non-negative"));
                }
                let total: f64 = p.iter().sum();
                if (total - 1.0).abs() > tol::EXACT {
                    return bad(format!("probabilities {p:?} sum to {total}"));
                }
                Ok(())
            }
        }
    }

    /// Short lowercase name used in reports and CSV output.
    pub fn kind(&self) -> &'static str {
        match self {
            ChannelSpec::Ideal => "ideal",
            ChannelSpec::AmplitudeDamping(_) => "ad",
            ChannelSpec::PhaseDamping(_) => "pd",
            ChannelSpec::CollectiveDephasing(_) => "cd",
            ChannelSpec::CollectiveRotation(_) => "cr",
            ChannelSpec::Pauli(_) => "pauli",
        }
    }
}

/// Operators `{E_k}` of a single-qubit channel.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet {
    pub operators: Vec<CMatrix>,
}

impl KrausSet {
    pub fn new(operators: Vec<CMatrix>) -> NoiseResult<Self> {
        let set = Self { operators };
        let defect = set.completeness_defect();
        if defect > tol::UNITARY {
            return Err(NoiseError::BadParameter(format!(
                "Kraus operators incomplete (defect {defect:e})"
            )));
        }
        Ok(set)
    }

    /// Largest entry of `|Σ E†E − I|`.
    pub fn completeness_defect(&self) -> f64 {
        let mut sum = CMatrix::zeros(2, 2);
        for e in &self.operators {
            sum += e.adjoint() * e;
        }
        (sum - CMatrix::identity(2, 2))
            .iter()
            .map(|x| x.norm())
            .fold(0.0, f64::max)
    }

    /// `ρ ↦ Σ E ρ E†` on a single-qubit matrix.
    pub fn apply_single(&self, rho: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(2, 2);
        for e in &self.operators {
            out += e * rho * e.adjoint();
        }
        out
    }
}

/// Result of [`kraus_for`].
#[derive(Clone, Debug, PartialEq)]
pub enum NoiseModel {
    /// Independent channel on each travel qubit.
    Kraus(KrausSet),
    /// The same unitary applied coherently to every travel qubit.
    Collective(CMatrix),
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn m2(a: f64, b: f64, c: f64, d: f64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[re(a), re(b), re(c), re(d)])
}

pub fn amplitude_damping_kraus(eta: f64) -> [CMatrix; 2] {
    [
        m2(1.0, 0.0, 0.0, (1.0 - eta).sqrt()),
        m2(0.0, eta.sqrt(), 0.0, 0.0),
    ]
}

pub fn phase_damping_kraus(eta: f64) -> [CMatrix; 3] {
    let s = eta.sqrt();
    [
        CMatrix::identity(2, 2) * re((1.0 - eta).sqrt()),
        m2(s, 0.0, 0.0, 0.0),
        m2(0.0, 0.0, 0.0, s),
    ]
}

/// `√p_i σ_i` for `σ = (X, Y, Z, I)`.
pub fn pauli_kraus(p: [f64; 4]) -> [CMatrix; 4] {
    let sigma = [
        gates::pauli_x(),
        gates::pauli_y(),
        gates::pauli_z(),
        gates::identity(),
    ];
    let mut out = sigma.clone();
    for (o, (s, pi)) in out.iter_mut().zip(sigma.iter().zip(p)) {
        *o = s * re(pi.sqrt());
    }
    out
}

/// `diag(1, e^{iΦ})`
pub fn collective_dephasing_unitary(phi: f64) -> CMatrix {
    gates::phase(phi)
}

/// `[[cos Θ, −sin Θ], [sin Θ, cos Θ]]`
pub fn collective_rotation_unitary(theta: f64) -> CMatrix {
    m2(theta.cos(), -theta.sin(), theta.sin(), theta.cos())
}

pub fn kraus_for(spec: &ChannelSpec) -> NoiseResult<NoiseModel> {
    spec.validate()?;
    let model = match *spec {
        ChannelSpec::Ideal => NoiseModel::Kraus(KrausSet::new(vec![gates::identity()])?),
        ChannelSpec::AmplitudeDamping(e) => {
            NoiseModel::Kraus(KrausSet::new(amplitude_damping_kraus(e).to_vec())?)
        }
        ChannelSpec::PhaseDamping(e) => {
            NoiseModel::Kraus(KrausSet::new(phase_damping_kraus(e).to_vec())?)
        }
        ChannelSpec::Pauli(p) => NoiseModel::Kraus(KrausSet::new(pauli_kraus(p).to_vec())?),
        ChannelSpec::CollectiveDephasing(a) => {
            NoiseModel::Collective(collective_dephasing_unitary(a))
        }
        ChannelSpec::CollectiveRotation(a) => {
            NoiseModel::Collective(collective_rotation_unitary(a))
        }
    };
    if let NoiseModel::Collective(u) = &model {
        let d = unitarity_defect(u);
        if d > tol::UNITARY {
            return Err(SimError::NonUnitary(d).into());
        }
    }
    Ok(model)
}

/// Evolves the freshly shared five-qubit state through travel noise.
pub fn apply_noise(rho: &DensityMatrix, spec: &ChannelSpec) -> NoiseResult<DensityMatrix> {
    if rho.n_qubits() != 5 {
        return Err(SimError::DimensionMismatch {
            expected: 32,
            got: rho.dim(),
        }
        .into());
    }
    if matches!(spec, ChannelSpec::Ideal) {
        spec.validate()?;
        return Ok(rho.clone());
    }
    match kraus_for(spec)? {
        NoiseModel::Kraus(set) => {
            let mut out = rho.clone();
            for q in TRAVEL_QUBITS {
                out = out.apply_kraus(&set.operators, q)?;
            }
            Ok(out)
        }
        NoiseModel::Collective(u) => {
            let mut out = rho.clone();
            for q in TRAVEL_QUBITS {
                out = out.apply_unitary(&u, &[q])?;
            }
            Ok(out)
        }
    }
}
