//! Gate matrices and their embedding into an `n`-qubit register.
//!
//! Register convention: big-endian. Basis index `b = Σᵢ qᵢ·2^(n−1−i)`, so
//! qubit 0 is the most significant bit and the three-qubit label `|q₀q₁q₂⟩`
//! is index `4q₀ + 2q₁ + q₂`. Multi-qubit gate matrices use the same
//! convention over their own wires: the first listed wire is the most
//! significant bit of the local index.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tensor::{Complex, ComplexMatrix, ONE, ZERO};

/// Largest register the dense routines accept.
pub const MAX_QUBITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum GateKind {
    H,
    X,
    Y,
    Z,
    S,
    T,
    /// Single-qubit phase `diag(1, e^{iφ})`.
    P(f64),
    /// Controlled NOT, wires `[control, target]`.
    Cnot,
    /// Controlled phase `diag(1, 1, 1, e^{iφ})`, wires `[control, target]`.
    Cp(f64),
    /// Toffoli, wires `[control, control, target]`.
    Ccx,
}

impl GateKind {
    pub fn arity(&self) -> usize {
        match self {
            GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::S
            | GateKind::T
            | GateKind::P(_) => 1,
            GateKind::Cnot | GateKind::Cp(_) => 2,
            GateKind::Ccx => 3,
        }
    }

    /// Mnemonic used by the circuit text format.
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Y => "Y",
            GateKind::Z => "Z",
            GateKind::S => "S",
            GateKind::T => "T",
            GateKind::P(_) => "P",
            GateKind::Cnot => "CNOT",
            GateKind::Cp(_) => "CP",
            GateKind::Ccx => "CCX",
        }
    }

    pub fn phi(&self) -> Option<f64> {
        match self {
            GateKind::P(phi) | GateKind::Cp(phi) => Some(*phi),
            _ => None,
        }
    }

    /// Builds a gate from its mnemonic and optional angle.
    pub fn from_name(name: &str, phi: Option<f64>) -> Result<Self> {
        let kind = match (name, phi) {
            ("H", None) => GateKind::H,
            ("X", None) => GateKind::X,
            ("Y", None) => GateKind::Y,
            ("Z", None) => GateKind::Z,
            ("S", None) => GateKind::S,
            ("T", None) => GateKind::T,
            ("CNOT", None) => GateKind::Cnot,
            ("CCX", None) => GateKind::Ccx,
            ("P", Some(phi)) => GateKind::P(phi),
            ("CP", Some(phi)) => GateKind::Cp(phi),
            ("P" | "CP", None) => {
                return Err(Error::InvalidArgument(format!("{name} requires phi")))
            }
            ("H" | "X" | "Y" | "Z" | "S" | "T" | "CNOT" | "CCX", Some(_)) => {
                return Err(Error::InvalidArgument(format!("{name} takes no phi")))
            }
            _ => return Err(Error::InvalidArgument(format!("unknown gate {name:?}"))),
        };
        if let Some(phi) = kind.phi() {
            if !phi.is_finite() {
                return Err(Error::NonFinite("gate angle"));
            }
        }
        Ok(kind)
    }

    pub fn matrix(&self) -> ComplexMatrix {
        gate_matrix(*self)
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phi() {
            Some(phi) => write!(f, "{}({phi})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

fn phase(phi: f64) -> Complex {
    Complex::from_polar(1.0, phi)
}

/// Textbook matrix of a gate on its own wires.
pub fn gate_matrix(kind: GateKind) -> ComplexMatrix {
    let r = |x: f64| Complex::new(x, 0.0);
    let i = Complex::new(0.0, 1.0);
    let m = match kind {
        GateKind::H => ComplexMatrix::new(
            2,
            vec![
                r(FRAC_1_SQRT_2),
                r(FRAC_1_SQRT_2),
                r(FRAC_1_SQRT_2),
                r(-FRAC_1_SQRT_2),
            ],
        ),
        GateKind::X => ComplexMatrix::new(2, vec![ZERO, ONE, ONE, ZERO]),
        GateKind::Y => ComplexMatrix::new(2, vec![ZERO, -i, i, ZERO]),
        GateKind::Z => ComplexMatrix::from_diagonal(&[ONE, r(-1.0)]),
        GateKind::S => ComplexMatrix::from_diagonal(&[ONE, i]),
        GateKind::T => ComplexMatrix::from_diagonal(&[ONE, phase(FRAC_PI_4)]),
        GateKind::P(phi) => ComplexMatrix::from_diagonal(&[ONE, phase(phi)]),
        GateKind::Cnot => {
            let mut m = ComplexMatrix::zeros(4);
            for (row, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
                m.set(row, col, ONE);
            }
            Ok(m)
        }
        GateKind::Cp(phi) => ComplexMatrix::from_diagonal(&[ONE, ONE, ONE, phase(phi)]),
        GateKind::Ccx => {
            let mut m = ComplexMatrix::zeros(8);
            for col in 0..8 {
                let row = match col {
                    6 => 7,
                    7 => 6,
                    c => c,
                };
                m.set(row, col, ONE);
            }
            Ok(m)
        }
    };
    // angles are validated at construction; special values cannot fail
    m.expect("gate matrix entries are finite")
}

/// Checks that `qubits` has the right length, no repeats, and fits in `n`.
pub fn validate_wires(qubits: &[usize], arity: usize, n: usize) -> Result<()> {
    if qubits.len() != arity {
        return Err(Error::InvalidQubits(format!(
            "expected {arity} wire(s), got {}",
            qubits.len()
        )));
    }
    for (i, &q) in qubits.iter().enumerate() {
        if q >= n {
            return Err(Error::InvalidQubits(format!(
                "qubit {q} out of range for {n}-qubit register"
            )));
        }
        if qubits[..i].contains(&q) {
            return Err(Error::InvalidQubits(format!("qubit {q} repeated")));
        }
    }
    Ok(())
}

/// Index arithmetic for applying a `k`-qubit matrix inside an `n`-qubit
/// register without materializing the `2ⁿ×2ⁿ` embedding.
#[derive(Clone, Debug)]
pub(crate) struct LocalGate {
    local: Vec<Complex>,
    local_dim: usize,
    /// Global offset contributed by each local basis index.
    offsets: Vec<usize>,
    /// Global indices whose gate-wire bits are all zero.
    bases: Vec<usize>,
}

impl LocalGate {
    pub(crate) fn new(matrix: &ComplexMatrix, qubits: &[usize], n: usize) -> Result<Self> {
        let k = qubits.len();
        if k == 0 || k > 3 {
            return Err(Error::InvalidQubits(format!("{k}-qubit local gates unsupported")));
        }
        if matrix.dim() != 1 << k {
            return Err(Error::DimensionMismatch {
                expected: 1 << k,
                found: matrix.dim(),
            });
        }
        validate_wires(qubits, k, n)?;
        let masks: Vec<usize> = qubits.iter().map(|&q| 1 << (n - 1 - q)).collect();
        let offsets = (0..1usize << k)
            .map(|l| {
                masks
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| l & (1 << (k - 1 - i)) != 0)
                    .map(|(_, m)| m)
                    .sum()
            })
            .collect();
        let wire_mask: usize = masks.iter().sum();
        let bases = (0..1usize << n).filter(|b| b & wire_mask == 0).collect();
        Ok(Self {
            local: matrix.entries().to_vec(),
            local_dim: 1 << k,
            offsets,
            bases,
        })
    }

    pub(crate) fn conjugated(&self) -> Self {
        Self {
            local: self.local.iter().map(|z| z.conj()).collect(),
            ..self.clone()
        }
    }

    /// Applies the gate to the vector `data[start + stride·i]`, `i < 2ⁿ`.
    pub(crate) fn apply_strided(&self, data: &mut [Complex], start: usize, stride: usize) {
        let d = self.local_dim;
        let mut gathered = [ZERO; 8];
        for &base in &self.bases {
            for (l, off) in self.offsets.iter().enumerate() {
                gathered[l] = data[start + stride * (base + off)];
            }
            for (row, off) in self.offsets.iter().enumerate() {
                let coeffs = &self.local[row * d..(row + 1) * d];
                data[start + stride * (base + off)] = coeffs
                    .iter()
                    .zip(&gathered[..d])
                    .map(|(a, b)| a * b)
                    .sum();
            }
        }
    }
}

/// Embeds an arbitrary `k`-qubit matrix acting on `qubits` into `n` qubits.
pub fn embed_matrix(local: &ComplexMatrix, qubits: &[usize], n: usize) -> Result<ComplexMatrix> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Capacity { n, max: MAX_QUBITS });
    }
    let k = qubits.len();
    if local.dim() != 1 << k {
        return Err(Error::DimensionMismatch {
            expected: 1 << k,
            found: local.dim(),
        });
    }
    validate_wires(qubits, k, n)?;
    let masks: Vec<usize> = qubits.iter().map(|&q| 1 << (n - 1 - q)).collect();
    let wire_mask: usize = masks.iter().sum();
    let local_index = |global: usize| -> usize {
        masks
            .iter()
            .fold(0, |acc, &m| (acc << 1) | usize::from(global & m != 0))
    };
    let dim = 1usize << n;
    let mut out = ComplexMatrix::zeros(dim);
    for r in 0..dim {
        for c in 0..dim {
            if r & !wire_mask == c & !wire_mask {
                out.set(r, c, local.get(local_index(r), local_index(c)));
            }
        }
    }
    Ok(out)
}

/// `2ⁿ×2ⁿ` unitary of `kind` on the listed wires, identity elsewhere.
pub fn embed(kind: GateKind, qubits: &[usize], n: usize) -> Result<ComplexMatrix> {
    if qubits.len() != kind.arity() {
        return Err(Error::Arity {
            gate: kind.name(),
            expected: kind.arity(),
            found: qubits.len(),
        });
    }
    embed_matrix(&gate_matrix(kind), qubits, n)
}
