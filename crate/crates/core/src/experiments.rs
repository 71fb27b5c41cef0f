//! Reproducible experiment procedures: single-gate noise sweep, two-gate
//! kickback chain, Pauli-injection propagation, and the adder benchmark.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use crate::angle::phi_display;
use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::format::fmt_sig;
use crate::gates::GateKind;
use crate::noise::{sample_near, samples_csv, sweep, FidelitySample, PGrid};
use crate::qaks::{append_qaks, basis_label};
use crate::tensor::{DensityMatrix, Statevector};

pub const CCX_LABEL: &str = "CCX";

pub fn qaks_label(phi: f64) -> String {
    format!("QA-KS({})", phi_display(phi))
}

/// Shared knobs for the randomized experiments.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub n_states: usize,
    pub grid: PGrid,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 42,
            n_states: 20,
            grid: PGrid::default(),
        }
    }
}

/// CCX, QA-KS(π/2) and QA-KS(π) on three qubits, labeled.
pub fn gate_circuits() -> Result<Vec<(String, Circuit)>> {
    let ccx = Circuit::new(3)?.with(GateKind::Ccx, &[0, 1, 2])?;
    let mut out = vec![(CCX_LABEL.to_string(), ccx)];
    for phi in [FRAC_PI_2, PI] {
        let mut c = Circuit::new(3)?;
        append_qaks(&mut c, phi, [0, 1, 2])?;
        out.push((qaks_label(phi), c));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub seed: u64,
    pub n_states: usize,
    pub grid: Vec<f64>,
    pub samples: Vec<FidelitySample>,
}

impl SweepReport {
    pub fn csv(&self) -> String {
        samples_csv(&self.samples, self.seed)
    }

    pub fn near(&self, label: &str, p: f64) -> Option<f64> {
        sample_near(&self.samples, label, p).map(|s| s.mean_fidelity)
    }
}

pub fn fidelity_sweep_experiment(cfg: &ExperimentConfig) -> Result<SweepReport> {
    let samples = sweep(&gate_circuits()?, &cfg.grid, cfg.n_states, cfg.seed)?;
    Ok(SweepReport {
        seed: cfg.seed,
        n_states: cfg.n_states,
        grid: cfg.grid.points().to_vec(),
        samples,
    })
}

/// Five-qubit two-gate chains on wires `[0,1,2]` then `[0,3,4]`:
/// `(CCX chain, QA-KS(φ) chain)`.
pub fn chain_circuits(phi: f64) -> Result<(Circuit, Circuit)> {
    let mut ccx = Circuit::new(5)?;
    ccx.push(GateKind::Ccx, &[0, 1, 2])?;
    ccx.push(GateKind::Ccx, &[0, 3, 4])?;
    let mut qaks = Circuit::new(5)?;
    append_qaks(&mut qaks, phi, [0, 1, 2])?;
    append_qaks(&mut qaks, phi, [0, 3, 4])?;
    Ok((ccx, qaks))
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub phi: f64,
    pub ccx_label: String,
    pub qaks_label: String,
    pub ccx_unitarity_deviation: f64,
    pub qaks_unitarity_deviation: f64,
    /// Every basis input of the CCX chain lands on a single basis output.
    pub ccx_chain_is_permutation: bool,
    pub max_abs_diff: f64,
    /// `max ||U_CCX| - |U_QAKS||`, entrywise.
    pub max_magnitude_diff: f64,
    pub frobenius_diff: f64,
    /// `|⟨out_CCX|out_QAKS⟩|²` for every five-qubit basis input.
    pub per_input_fidelity: BTreeMap<String, f64>,
    pub noisy_chain_fidelities: Vec<FidelitySample>,
    pub seed: u64,
}

impl ChainReport {
    pub fn csv(&self) -> String {
        samples_csv(&self.noisy_chain_fidelities, self.seed)
    }

    pub fn input_fidelity(&self, basis: usize) -> Option<f64> {
        self.per_input_fidelity.get(&basis_label(basis, 5)).copied()
    }
}

pub fn chain_experiment(phi: f64, cfg: &ExperimentConfig) -> Result<ChainReport> {
    let (ccx, qaks) = chain_circuits(phi)?;
    let u_ccx = ccx.unitary()?;
    let u_qaks = qaks.unitary()?;
    let diff = u_ccx.sub(&u_qaks)?;

    let mut per_input_fidelity = BTreeMap::new();
    let mut permutation = true;
    for b in 0..32 {
        let out_ccx = Statevector::new(u_ccx.column(b))?;
        let out_qaks = Statevector::new(u_qaks.column(b))?;
        let ones = out_ccx
            .amps()
            .iter()
            .filter(|a| (a.norm() - 1.0).abs() < 1e-12)
            .count();
        permutation &= ones == 1;
        per_input_fidelity.insert(basis_label(b, 5), out_ccx.inner(&out_qaks)?.norm_sqr());
    }

    let ccx_label = format!("{CCX_LABEL}-chain");
    let qaks_label = format!("{}-chain", qaks_label(phi));
    let noisy = sweep(
        &[(ccx_label.clone(), ccx), (qaks_label.clone(), qaks)],
        &cfg.grid,
        cfg.n_states,
        cfg.seed,
    )?;

    Ok(ChainReport {
        phi,
        ccx_label,
        qaks_label,
        ccx_unitarity_deviation: u_ccx.unitarity_deviation(),
        qaks_unitarity_deviation: u_qaks.unitarity_deviation(),
        ccx_chain_is_permutation: permutation,
        max_abs_diff: diff.max_abs(),
        max_magnitude_diff: u_ccx
            .entries()
            .iter()
            .zip(u_qaks.entries())
            .map(|(a, b)| (a.norm() - b.norm()).abs())
            .fold(0.0, f64::max),
        frobenius_diff: diff.frobenius_norm(),
        per_input_fidelity,
        noisy_chain_fidelities: noisy,
        seed: cfg.seed,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    fn gate(self) -> GateKind {
        match self {
            Pauli::X => GateKind::X,
            Pauli::Y => GateKind::Y,
            Pauli::Z => GateKind::Z,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropagationRow {
    pub gate_label: String,
    pub input_label: String,
    pub pauli: Pauli,
    pub weight_q0: f64,
    pub weight_q1: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropagationReport {
    /// Where the error enters: on q2 of the input, before the gate.
    pub injection: String,
    pub rows: Vec<PropagationRow>,
}

impl PropagationReport {
    pub fn csv(&self) -> String {
        let mut out = String::from("gate,input,pauli,weight_q0,weight_q1\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{:?},{},{}\n",
                r.gate_label,
                r.input_label,
                r.pauli,
                fmt_sig(r.weight_q0, 10),
                fmt_sig(r.weight_q1, 10)
            ));
        }
        out
    }

    /// Largest weight over rows for `gate` and `pauli`: `(q0, q1)`.
    pub fn max_weights(&self, gate: &str, pauli: Pauli) -> (f64, f64) {
        self.rows
            .iter()
            .filter(|r| r.gate_label == gate && r.pauli == pauli)
            .fold((0.0f64, 0.0f64), |(a, b), r| {
                (a.max(r.weight_q0), b.max(r.weight_q1))
            })
    }
}

/// Inputs with the second control at zero.
pub const Q1_ZERO_INPUTS: [usize; 4] = [0b000, 0b001, 0b100, 0b101];

/// Trace distance between the q0 (and q1) marginals of `G|b⟩` and
/// `G·P_{q2}|b⟩`, for CCX and each QA-KS angle in `phis`.
pub fn error_propagation(phis: &[f64]) -> Result<PropagationReport> {
    let mut gates = vec![(
        CCX_LABEL.to_string(),
        Circuit::new(3)?.with(GateKind::Ccx, &[0, 1, 2])?,
    )];
    for &phi in phis {
        let mut c = Circuit::new(3)?;
        append_qaks(&mut c, phi, [0, 1, 2])?;
        gates.push((qaks_label(phi), c));
    }

    let mut rows = Vec::new();
    for (label, gate) in &gates {
        for &b in &Q1_ZERO_INPUTS {
            let input = Statevector::basis(3, b)?;
            let clean = DensityMatrix::from_pure(&gate.apply_to_state(&input)?);
            for pauli in Pauli::ALL {
                let injected = Circuit::new(3)?.with(pauli.gate(), &[2])?.apply_to_state(&input)?;
                let errored = DensityMatrix::from_pure(&gate.apply_to_state(&injected)?);
                let weight = |q: usize| -> Result<f64> {
                    clean
                        .partial_trace(&[q])?
                        .trace_distance(&errored.partial_trace(&[q])?)
                };
                rows.push(PropagationRow {
                    gate_label: label.clone(),
                    input_label: basis_label(b, 3),
                    pauli,
                    weight_q0: weight(0)?,
                    weight_q1: weight(1)?,
                });
            }
        }
    }
    Ok(PropagationReport {
        injection: "single-qubit Pauli on q2 of the basis input, before the gate".into(),
        rows,
    })
}

/// Six-qubit adder on `[a0, b0, a1, b1, c0, c1]`. `site_phi = None` uses CCX
/// at both carry sites, `Some(φ)` substitutes QA-KS(φ) with wire order
/// (controls, target).
pub fn adder_circuit(site_phi: Option<f64>) -> Result<Circuit> {
    let mut c = Circuit::new(6)?;
    let carry = |c: &mut Circuit, wires: [usize; 3]| -> Result<()> {
        match site_phi {
            None => c.push(GateKind::Ccx, &wires),
            Some(phi) => append_qaks(c, phi, wires),
        }
    };
    carry(&mut c, [0, 1, 4])?;
    c.push(GateKind::Cnot, &[0, 1])?;
    carry(&mut c, [2, 3, 5])?;
    c.push(GateKind::Cnot, &[2, 3])?;
    c.push(GateKind::Cnot, &[4, 3])?;
    Ok(c)
}

#[derive(Clone, Debug, Serialize)]
pub struct AdderReport {
    pub netlist: String,
    pub curves: Vec<FidelitySample>,
    /// Grid point used for the gap, the one nearest 1e-2.
    pub gap_p: f64,
    /// F̄(CCX adder) − F̄(QA-KS(π) adder) at `gap_p`.
    pub gap_at_1e_2: f64,
    /// Same gap for the π/2 adder.
    pub gap_pi_2_at_1e_2: f64,
    /// Largest |F̄(π/2 adder) − F̄(π adder)| over the grid.
    pub variant_curve_max_diff: f64,
    pub seed: u64,
}

impl AdderReport {
    pub fn csv(&self) -> String {
        samples_csv(&self.curves, self.seed)
    }

    pub fn near(&self, label: &str, p: f64) -> Option<f64> {
        sample_near(&self.curves, label, p).map(|s| s.mean_fidelity)
    }
}

pub fn adder_label(site_phi: Option<f64>) -> String {
    match site_phi {
        None => format!("{CCX_LABEL}-adder"),
        Some(phi) => format!("{}-adder", qaks_label(phi)),
    }
}

pub fn adder_benchmark(cfg: &ExperimentConfig) -> Result<AdderReport> {
    let variants = [None, Some(FRAC_PI_2), Some(PI)];
    let circuits = variants
        .iter()
        .map(|&v| Ok((adder_label(v), adder_circuit(v)?)))
        .collect::<Result<Vec<_>>>()?;
    let curves = sweep(&circuits, &cfg.grid, cfg.n_states, cfg.seed)?;

    let at = |label: &str| {
        sample_near(&curves, label, 1e-2)
            .ok_or_else(|| Error::InvalidArgument("grid has no positive rate".into()))
    };
    let ccx = at(&adder_label(None))?;
    let pi_2 = at(&adder_label(Some(FRAC_PI_2)))?;
    let pi = at(&adder_label(Some(PI)))?;

    let curve = |label: String| -> Vec<f64> {
        curves
            .iter()
            .filter(|s| s.circuit_label == label)
            .map(|s| s.mean_fidelity)
            .collect()
    };
    let variant_curve_max_diff = curve(adder_label(Some(FRAC_PI_2)))
        .iter()
        .zip(curve(adder_label(Some(PI))))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    Ok(AdderReport {
        netlist: adder_circuit(None)?.to_text(),
        gap_p: ccx.p,
        gap_at_1e_2: ccx.mean_fidelity - pi.mean_fidelity,
        gap_pi_2_at_1e_2: ccx.mean_fidelity - pi_2.mean_fidelity,
        variant_curve_max_diff,
        curves,
        seed: cfg.seed,
    })
}
