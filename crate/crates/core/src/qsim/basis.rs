use std::f64::consts::FRAC_1_SQRT_2;

use super::{tol, SimError, SimResult, C64};

/// An orthonormal single-qubit measurement basis `{b0, b1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleQubitBasis {
    pub b0: [C64; 2],
    pub b1: [C64; 2],
    pub label: String,
}

fn inner(x: &[C64; 2], y: &[C64; 2]) -> C64 {
    x[0].conj() * y[0] + x[1].conj() * y[1]
}

impl SingleQubitBasis {
    pub fn new(b0: [C64; 2], b1: [C64; 2], label: impl Into<String>) -> SimResult<Self> {
        let basis = Self {
            b0,
            b1,
            label: label.into(),
        };
        if basis.orthonormality_defect() > tol::EXACT {
            return Err(SimError::NotOrthonormal);
        }
        Ok(basis)
    }

    /// `{|0⟩, |1⟩}`
    pub fn computational() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        Self {
            b0: [one, zero],
            b1: [zero, one],
            label: "z".into(),
        }
    }

    /// `{|+⟩, |−⟩}`
    pub fn plus_minus() -> Self {
        let h = C64::new(FRAC_1_SQRT_2, 0.0);
        Self {
            b0: [h, h],
            b1: [h, -h],
            label: "x".into(),
        }
    }

    pub fn vector(&self, outcome: super::Outcome) -> &[C64; 2] {
        match outcome {
            super::Outcome::Zero => &self.b0,
            super::Outcome::One => &self.b1,
        }
    }

    /// Largest deviation among `⟨b0|b0⟩ − 1`, `⟨b1|b1⟩ − 1` and `|⟨b0|b1⟩|`.
    pub fn orthonormality_defect(&self) -> f64 {
        let n0 = (inner(&self.b0, &self.b0).re - 1.0).abs();
        let n1 = (inner(&self.b1, &self.b1).re - 1.0).abs();
        let cross = inner(&self.b0, &self.b1).norm();
        n0.max(n1).max(cross)
    }
}

/// Alice1's amplitude basis: `|u0⟩ = a|0⟩ + b|1⟩`, `|u1⟩ = b|0⟩ − a|1⟩`.
pub fn u_basis(a: f64, b: f64) -> SimResult<SingleQubitBasis> {
    let norm = a * a + b * b;
    if !a.is_finite() || !b.is_finite() || (norm - 1.0).abs() > tol::EXACT {
        return Err(SimError::NonUnitInput(norm));
    }
    let re = |x: f64| C64::new(x, 0.0);
    SingleQubitBasis::new([re(a), re(b)], [re(b), re(-a)], "u")
}

/// Alice2's phase basis: `|v0⟩ = (|0⟩ + e^{iφ}|1⟩)/√2`, `|v1⟩ = (e^{−iφ}|0⟩ − |1⟩)/√2`.
pub fn v_basis(phi: f64) -> SingleQubitBasis {
    let h = FRAC_1_SQRT_2;
    SingleQubitBasis {
        b0: [C64::new(h, 0.0), C64::from_polar(h, phi)],
        b1: [C64::from_polar(h, -phi), C64::new(-h, 0.0)],
        label: "v".into(),
    }
}
