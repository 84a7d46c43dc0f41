//! Dense state-vector and density-matrix primitives.
//!
//! Qubit `i` of an `n`-qubit register is bit `n - 1 - i` of the amplitude
//! index, so basis labels read left to right in register order: index 0 of a
//! five-qubit register is `S1` and `|10000⟩` has amplitude index 16.

mod basis;
mod state;

pub use basis::{u_basis, v_basis, SingleQubitBasis};
pub use state::{DensityMatrix, Measurement, PureState, Register, Validity};

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Numerical tolerances shared across the crate.
pub mod tol {
    /// Exact linear-algebra identities (norms, traces, inner products).
    pub const EXACT: f64 = 1e-12;
    /// Unitarity and completeness checks.
    pub const UNITARY: f64 = 1e-10;
    /// Smallest eigenvalue allowed for a density matrix.
    pub const PSD: f64 = -1e-10;
    /// Closed-form versus simulation comparisons.
    pub const CLOSED_FORM: f64 = 1e-6;
    /// A forced measurement branch at or below this probability is unreachable.
    pub const ZERO_BRANCH: f64 = 1e-15;
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("input is not normalized: squared norm {0}")]
    NonUnitInput(f64),
    #[error("basis vectors are not orthonormal")]
    NotOrthonormal,
    #[error("matrix is not unitary (max deviation {0:e})")]
    NonUnitary(f64),
    #[error("bad target qubits {targets:?} for a {n_qubits}-qubit register")]
    BadTargets {
        targets: Vec<usize>,
        n_qubits: usize,
    },
    #[error("forced outcome has probability {0:e}")]
    ZeroProbabilityBranch(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid state: {0}")]
    InvalidState(String),
}

pub type SimResult<T> = Result<T, SimError>;

/// Position of a qubit inside a register.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QubitIndex(pub usize);

impl QubitIndex {
    /// Alice1's home qubit.
    pub const S1: Self = Self(0);
    /// Alice2's qubit.
    pub const S2: Self = Self(1);
    /// Bob1's qubit.
    pub const R1: Self = Self(2);
    /// Bob2's qubit.
    pub const R2: Self = Self(3);
    /// Bob3's qubit.
    pub const R3: Self = Self(4);
    /// Receiver ancilla appended by the probabilistic protocol.
    pub const ANCILLA: Self = Self(5);
}

impl From<usize> for QubitIndex {
    fn from(i: usize) -> Self {
        Self(i)
    }
}

/// Result of a single-qubit projective measurement.
#[derive(
    Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize,
)]
pub enum Outcome {
    /// First basis vector.
    Zero = 0,
    /// Second basis vector.
    One = 1,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Zero, Outcome::One];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Outcome::One
        } else {
            Outcome::Zero
        }
    }
}

/// The state `cos θ |0⟩ + e^{iφ} sin θ |1⟩` that the senders prepare remotely.
#[derive(Copy, Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TargetState {
    pub theta: f64,
    pub phi: f64,
}

impl TargetState {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Real amplitude of `|0⟩`.
    pub fn a(&self) -> f64 {
        self.theta.cos()
    }

    /// Real magnitude of the `|1⟩` amplitude.
    pub fn b(&self) -> f64 {
        self.theta.sin()
    }

    pub fn amplitudes(&self) -> [C64; 2] {
        [C64::new(self.a(), 0.0), C64::from_polar(self.b(), self.phi)]
    }

    pub fn ket(&self) -> PureState {
        make_target_state(self.theta, self.phi)
    }
}

pub fn make_target_state(theta: f64, phi: f64) -> PureState {
    let t = TargetState::new(theta, phi);
    PureState::from_amplitudes_unchecked(t.amplitudes().to_vec())
}

/// `⟨T|ρ|T⟩` for a single-qubit `ρ`.
pub fn fidelity_against(rho: &DensityMatrix, target: &PureState) -> SimResult<f64> {
    if rho.dim() != target.dim() {
        return Err(SimError::DimensionMismatch {
            expected: target.dim(),
            got: rho.dim(),
        });
    }
    let t = target.amplitudes();
    let m = rho.matrix();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..t.len() {
        for j in 0..t.len() {
            acc += t[i].conj() * m[(i, j)] * t[j];
        }
    }
    Ok(acc.re)
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    unitarity_defect(u) <= tol
}

/// Largest entry of `|U†U − I|`.
pub fn unitarity_defect(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let prod = u.adjoint() * u;
    let mut worst = 0.0_f64;
    for i in 0..prod.nrows() {
        for j in 0..prod.ncols() {
            let expect = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((prod[(i, j)] - C64::new(expect, 0.0)).norm());
        }
    }
    worst
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Standard single-qubit gates.
pub mod gates {
    use super::{CMatrix, C64};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    pub fn identity() -> CMatrix {
        CMatrix::identity(2, 2)
    }

    pub fn pauli_x() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
    }

    pub fn pauli_y() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
    }

    pub fn pauli_z() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
    }

    /// `i·Y = [[0, 1], [−1, 0]]`.
    pub fn i_y() -> CMatrix {
        pauli_y() * c(0., 1.)
    }

    /// `diag(1, e^{iλ})`.
    pub fn phase(lambda: f64) -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[
                c(1., 0.),
                c(0., 0.),
                c(0., 0.),
                C64::from_polar(1.0, lambda),
            ],
        )
    }
}
