//! The QA-KS(φ) three-qubit gate family.
//!
//! A member of the family is the four-layer circuit
//!
//! ```text
//! H(c0) ; CCX(c0, c1 -> t) ; CP(φ)(t -> c0) ; H(c0)
//! ```
//!
//! read in time order. The unitary is always synthesized from this
//! construction; published matrices and tables are only ever compared
//! against it (see [`crosscheck`]).

pub mod crosscheck;
pub mod published;

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::GateKind;
use crate::circuit::Circuit;
use crate::tensor::{Complex, ComplexMatrix, Statevector};

/// φ = π/2 (controlled-S kickback) and φ = π (CZ kickback).
pub const CANONICAL_PHIS: [f64; 2] = [FRAC_PI_2, PI];

/// Magnitude below which an output amplitude does not count as a component.
const COMPONENT_THRESHOLD: f64 = 1e-10;
/// Largest phase argument still treated as `+1`.
const PHASE_THRESHOLD: f64 = 1e-9;

/// Appends one gate of the family on wires `[control0, control1, target]`.
pub fn append_qaks(circuit: &mut Circuit, phi: f64, wires: [usize; 3]) -> Result<()> {
    let [c0, c1, t] = wires;
    circuit.push(GateKind::H, &[c0])?;
    circuit.push(GateKind::Ccx, &[c0, c1, t])?;
    circuit.push(GateKind::Cp(phi), &[t, c0])?;
    circuit.push(GateKind::H, &[c0])?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct QaksGate {
    phi: f64,
    circuit: Circuit,
    unitary: ComplexMatrix,
}

pub fn build_qaks(phi: f64) -> Result<QaksGate> {
    if !phi.is_finite() {
        return Err(Error::NonFinite("phi"));
    }
    let mut circuit = Circuit::new(3)?;
    append_qaks(&mut circuit, phi, [0, 1, 2])?;
    let unitary = circuit.unitary()?;
    Ok(QaksGate {
        phi,
        circuit,
        unitary,
    })
}

impl QaksGate {
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    /// `U|b⟩` for a three-bit basis label.
    pub fn output_of(&self, basis: usize) -> Vec<Complex> {
        self.unitary.column(basis)
    }

    /// Magnitude of the `q₀ = 1` part of `U|001⟩`.
    pub fn dynamic_kickback(&self) -> f64 {
        self.output_of(0b001)[4..]
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn classify_input(&self, basis: usize) -> InputClassification {
        classify_output(basis, &self.output_of(basis))
    }
}

/// Closed-form kickback amplitude `sin(φ/2)`.
pub fn kickback_amplitude(phi: f64) -> f64 {
    (phi / 2.0).sin()
}

/// `|q₀q₁q₂⟩`-style label for an `n`-bit basis index.
pub fn basis_label(index: usize, n_qubits: usize) -> String {
    format!("|{index:0n_qubits$b}>")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OutputKind {
    Deterministic,
    DeterministicUpToPhase,
    Entangled,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputComponent {
    pub basis: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputClassification {
    pub basis_input: String,
    pub kind: OutputKind,
    pub component_count: usize,
    pub output: Vec<OutputComponent>,
}

/// Classifies a basis input by the computational-basis support of its image.
pub fn classify_output(basis: usize, output: &[Complex]) -> InputClassification {
    let n = output.len().trailing_zeros() as usize;
    let components: Vec<(usize, Complex)> = output
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > COMPONENT_THRESHOLD)
        .map(|(i, a)| (i, *a))
        .collect();
    let kind = match components.as_slice() {
        [(_, a)] if a.arg().abs() <= PHASE_THRESHOLD => OutputKind::Deterministic,
        [_] => OutputKind::DeterministicUpToPhase,
        _ => OutputKind::Entangled,
    };
    InputClassification {
        basis_input: basis_label(basis, n),
        kind,
        component_count: components.len(),
        output: components
            .into_iter()
            .map(|(i, a)| OutputComponent {
                basis: basis_label(i, n),
                re: clean_zero(a.re),
                im: clean_zero(a.im),
            })
            .collect(),
    }
}

fn clean_zero(x: f64) -> f64 {
    if x.abs() < 1e-15 {
        0.0
    } else {
        x
    }
}

/// All eight basis inputs of `U(φ)`, classified.
pub fn truth_table(phi: f64) -> Result<Vec<InputClassification>> {
    let gate = build_qaks(phi)?;
    Ok((0..8).map(|b| gate.classify_input(b)).collect())
}

/// Output of `U(φ)` on a basis input as a state.
pub fn apply_to_basis(gate: &QaksGate, basis: usize) -> Result<Statevector> {
    Statevector::new(gate.output_of(basis))
}
