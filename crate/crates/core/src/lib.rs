//! Simulator for hierarchical joint remote state preparation over a five-qubit
//! cluster state.

pub mod analysis;
pub mod noise;
pub mod protocol;
pub mod qsim;
