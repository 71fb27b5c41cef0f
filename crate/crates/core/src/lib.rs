//! Gate-level simulator and verification harness for the QA-KS(φ) family of
//! three-qubit gates: a Toffoli wrapped in a Hadamard sandwich on its first
//! control, followed by a controlled-phase kickback from the target.
//!
//! Module map:
//! - [`tensor`]: dense complex matrices, states and state metrics
//! - [`gates`]: gate matrices and register embedding (q0 = most significant bit)
//! - [`circuit`]: circuit IR, unitary synthesis, text format, resource counts
//! - [`qaks`]: the gate family, truth tables and the published-value cross-check
//! - [`noise`]: depolarizing channel, density-matrix runs, average gate fidelity
//! - [`experiments`]: noise sweep, kickback chain, error propagation, adder
//! - [`artifacts`]: report rendering and the full output tree

pub mod angle;
pub mod artifacts;
pub mod circuit;
pub mod error;
pub mod experiments;
pub mod format;
pub mod gates;
pub mod noise;
pub mod qaks;
pub mod tensor;

pub use circuit::{Circuit, CostTable, GateApplication, ResourceReport};
pub use error::{Error, Result};
pub use gates::{embed, gate_matrix, GateKind, MAX_QUBITS};
pub use noise::{avg_gate_fidelity, run_noisy, sweep, FidelitySample, NoiseModel, PGrid};
pub use qaks::{build_qaks, kickback_amplitude, truth_table, QaksGate};
pub use tensor::{haar_random_state, state_fidelity, Complex, ComplexMatrix, DensityMatrix, Statevector};
