//! Correction tables for the deterministic and probabilistic protocols.
//!
//! Bob3's tables also serve Bob1 with the roles of R1 and R3 swapped.

use serde::{Deserialize, Serialize};

use super::{Agent, ProtocolError, ProtocolResult};
use crate::qsim::{gates, CMatrix, Outcome};

/// Pauli correction applied by the reconstructor.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    I,
    X,
    Z,
    /// `i·Y = [[0, 1], [−1, 0]]`
    IY,
}

impl Pauli {
    pub fn label(self) -> &'static str {
        match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Z => "Z",
            Pauli::IY => "iY",
        }
    }

    pub fn matrix(self) -> CMatrix {
        match self {
            Pauli::I => gates::identity(),
            Pauli::X => gates::pauli_x(),
            Pauli::Z => gates::pauli_z(),
            Pauli::IY => gates::i_y(),
        }
    }
}

impl std::fmt::Display for Pauli {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Two-qubit unitary applied to the receiver and its ancilla.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitaryChoice {
    U0,
    U1,
}

impl UnitaryChoice {
    pub fn label(self) -> &'static str {
        match self {
            UnitaryChoice::U0 => "U0",
            UnitaryChoice::U1 => "U1",
        }
    }
}

/// One row of a correction table. `plus_minus` is the lower helper's `{±}`
/// outcome (absent when Bob2 reconstructs) and `computational` the
/// `{0, 1}` helper outcome.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub alice1: Outcome,
    pub alice2: Outcome,
    pub plus_minus: Option<Outcome>,
    pub computational: Outcome,
    pub unitary: Option<UnitaryChoice>,
    pub correction: Pauli,
}

/// Flat text form of a [`TableRow`] for CSV output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRecord {
    pub alice1: String,
    pub alice2: String,
    pub bob_pm: String,
    pub bob_z: String,
    pub unitary: String,
    pub correction: String,
}

impl TableRow {
    pub fn record(&self) -> TableRecord {
        TableRecord {
            alice1: format!("u{}", self.alice1.index()),
            alice2: format!("v{}", self.alice2.index()),
            bob_pm: match self.plus_minus {
                None => String::new(),
                Some(Outcome::Zero) => "+".into(),
                Some(Outcome::One) => "-".into(),
            },
            bob_z: self.computational.index().to_string(),
            unitary: self
                .unitary
                .map(|u| u.label().to_string())
                .unwrap_or_default(),
            correction: self.correction.label().to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionTable {
    /// 1 to 8.
    pub number: u8,
    pub reconstructor: Agent,
    pub probabilistic: bool,
    pub rows: Vec<TableRow>,
}

use Outcome::{One as O1, Zero as O0};
use Pauli::{I, IY, X, Z};
use UnitaryChoice::{U0, U1};

// (alice1, alice2, helper, correction)
const DET_BOB2: [(Outcome, Outcome, Outcome, Pauli); 8] = [
    (O0, O0, O0, I),
    (O0, O0, O1, X),
    (O0, O1, O0, Z),
    (O0, O1, O1, IY),
    (O1, O0, O0, IY),
    (O1, O0, O1, Z),
    (O1, O1, O0, X),
    (O1, O1, O1, I),
];

// (alice1, alice2, ±, computational, correction)
const DET_LOWER: [(Outcome, Outcome, Outcome, Outcome, Pauli); 16] = [
    (O0, O0, O0, O0, I),
    (O0, O0, O1, O0, Z),
    (O0, O0, O0, O1, X),
    (O0, O0, O1, O1, IY),
    (O0, O1, O0, O0, Z),
    (O0, O1, O1, O0, I),
    (O0, O1, O0, O1, IY),
    (O0, O1, O1, O1, X),
    (O1, O0, O0, O0, IY),
    (O1, O0, O1, O0, X),
    (O1, O0, O0, O1, Z),
    (O1, O0, O1, O1, I),
    (O1, O1, O0, O0, X),
    (O1, O1, O1, O0, IY),
    (O1, O1, O0, O1, I),
    (O1, O1, O1, O1, Z),
];

// (alice1, alice2, helper, unitary, correction)
const PROB_BOB2: [(Outcome, Outcome, Outcome, UnitaryChoice, Pauli); 8] = [
    (O0, O0, O0, U0, I),
    (O0, O0, O1, U1, I),
    (O0, O1, O0, U0, Z),
    (O0, O1, O1, U1, Z),
    (O1, O0, O0, U0, IY),
    (O1, O0, O1, U1, IY),
    (O1, O1, O0, U0, X),
    (O1, O1, O1, U1, X),
];

// (alice1, alice2, ±, computational, unitary, correction)
const PROB_LOWER: [(Outcome, Outcome, Outcome, Outcome, UnitaryChoice, Pauli); 16] = [
    (O0, O0, O0, O0, U0, I),
    (O0, O0, O1, O0, U0, Z),
    (O0, O0, O0, O1, U1, I),
    (O0, O0, O1, O1, U1, Z),
    (O0, O1, O0, O0, U0, Z),
    (O0, O1, O1, O0, U0, I),
    (O0, O1, O0, O1, U1, Z),
    (O0, O1, O1, O1, U1, I),
    (O1, O0, O0, O0, U0, IY),
    (O1, O0, O1, O0, U0, X),
    (O1, O0, O0, O1, U1, IY),
    (O1, O0, O1, O1, U1, X),
    (O1, O1, O0, O0, U0, X),
    (O1, O1, O1, O0, U0, IY),
    (O1, O1, O0, O1, U1, X),
    (O1, O1, O1, O1, U1, IY),
];

fn rows_for(probabilistic: bool, lower: bool, alice1: Outcome) -> Vec<TableRow> {
    let rows: Vec<TableRow> = match (probabilistic, lower) {
        (false, false) => DET_BOB2
            .iter()
            .map(|&(a1, a2, c, p)| TableRow {
                alice1: a1,
                alice2: a2,
                plus_minus: None,
                computational: c,
                unitary: None,
                correction: p,
            })
            .collect(),
        (false, true) => DET_LOWER
            .iter()
            .map(|&(a1, a2, pm, c, p)| TableRow {
                alice1: a1,
                alice2: a2,
                plus_minus: Some(pm),
                computational: c,
                unitary: None,
                correction: p,
            })
            .collect(),
        (true, false) => PROB_BOB2
            .iter()
            .map(|&(a1, a2, c, u, p)| TableRow {
                alice1: a1,
                alice2: a2,
                plus_minus: None,
                computational: c,
                unitary: Some(u),
                correction: p,
            })
            .collect(),
        (true, true) => PROB_LOWER
            .iter()
            .map(|&(a1, a2, pm, c, u, p)| TableRow {
                alice1: a1,
                alice2: a2,
                plus_minus: Some(pm),
                computational: c,
                unitary: Some(u),
                correction: p,
            })
            .collect(),
    };
    rows.into_iter().filter(|r| r.alice1 == alice1).collect()
}

/// Table `number` (1 to 8).
pub fn table(number: u8) -> ProtocolResult<CorrectionTable> {
    if !(1..=8).contains(&number) {
        return Err(ProtocolError::KeyNotInTable(format!("no table {number}")));
    }
    let i = number - 1;
    let probabilistic = i >= 4;
    let lower = i % 2 == 1;
    let alice1 = Outcome::from_bit(i % 4 >= 2);
    Ok(CorrectionTable {
        number,
        reconstructor: if lower { Agent::Bob3 } else { Agent::Bob2 },
        probabilistic,
        rows: rows_for(probabilistic, lower, alice1),
    })
}

/// Tables 1 to 8 in order.
pub fn all_tables() -> Vec<CorrectionTable> {
    (1..=8)
        .map(|n| table(n).expect("tables 1..=8 exist"))
        .collect()
}

/// Inputs needed to find a correction.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct CorrectionKey {
    pub probabilistic: bool,
    pub reconstructor: Agent,
    pub alice1: Outcome,
    pub alice2: Outcome,
    pub plus_minus: Option<Outcome>,
    pub computational: Outcome,
}

pub fn correction_lookup(key: &CorrectionKey) -> ProtocolResult<TableRow> {
    let lower = key.reconstructor != Agent::Bob2;
    if lower != key.plus_minus.is_some() {
        return Err(ProtocolError::KeyNotInTable(format!("{key:?}")));
    }
    rows_for(key.probabilistic, lower, key.alice1)
        .into_iter()
        .find(|r| {
            r.alice2 == key.alice2
                && r.plus_minus == key.plus_minus
                && r.computational == key.computational
        })
        .ok_or_else(|| ProtocolError::KeyNotInTable(format!("{key:?}")))
}
