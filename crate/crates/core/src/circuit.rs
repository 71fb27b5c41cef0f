//! Circuit IR, exact unitary synthesis, statevector execution and static
//! resource accounting.
//!
//! Text format, one gate per line:
//!
//! ```text
//! qubits 3
//! H 0
//! CCX 0 1 2
//! CP 2 0 phi=3.141592653589793
//! H 0
//! ```
//!
//! Blank lines and lines starting with `#` are ignored on input. Angles are
//! written in the shortest decimal form that parses back to the same `f64`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gates::{embed, gate_matrix, validate_wires, GateKind, LocalGate, MAX_QUBITS};
use crate::tensor::{ComplexMatrix, Statevector};

/// Largest register a circuit may declare. Dense synthesis is further
/// limited to [`MAX_QUBITS`].
pub const CIRCUIT_MAX_QUBITS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GateApplication {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
}

impl GateApplication {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::Arity {
                gate: kind.name(),
                expected: kind.arity(),
                found: qubits.len(),
            });
        }
        validate_wires(qubits, kind.arity(), usize::MAX)?;
        Ok(Self {
            kind,
            qubits: qubits.to_vec(),
        })
    }
}

/// Ordered gate list; the first op is applied first.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Circuit {
    n_qubits: usize,
    ops: Vec<GateApplication>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > CIRCUIT_MAX_QUBITS {
            return Err(Error::Capacity {
                n: n_qubits,
                max: CIRCUIT_MAX_QUBITS,
            });
        }
        Ok(Self {
            n_qubits,
            ops: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn ops(&self) -> &[GateApplication] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, kind: GateKind, qubits: &[usize]) -> Result<()> {
        let op = GateApplication::new(kind, qubits)?;
        validate_wires(qubits, kind.arity(), self.n_qubits)?;
        self.ops.push(op);
        Ok(())
    }

    /// Builder form of [`Circuit::push`].
    pub fn with(mut self, kind: GateKind, qubits: &[usize]) -> Result<Self> {
        self.push(kind, qubits)?;
        Ok(self)
    }

    /// Appends every op of `other`, which must act on a register that fits.
    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        for op in &other.ops {
            self.push(op.kind, &op.qubits)?;
        }
        Ok(())
    }

    fn check_dense_capacity(&self) -> Result<()> {
        if self.n_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                n: self.n_qubits,
                max: MAX_QUBITS,
            });
        }
        Ok(())
    }

    /// Dense unitary `U_k ··· U_1` (the first op is rightmost).
    pub fn unitary(&self) -> Result<ComplexMatrix> {
        self.check_dense_capacity()?;
        let mut u = ComplexMatrix::identity(1 << self.n_qubits);
        for op in &self.ops {
            u = embed(op.kind, &op.qubits, self.n_qubits)?.matmul(&u)?;
        }
        Ok(u)
    }

    /// Runs the circuit on a pure state gate by gate.
    pub fn apply_to_state(&self, psi: &Statevector) -> Result<Statevector> {
        if psi.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: 1 << self.n_qubits,
                found: psi.dim(),
            });
        }
        let mut amps = psi.amps().to_vec();
        for op in &self.ops {
            LocalGate::new(&gate_matrix(op.kind), &op.qubits, self.n_qubits)?
                .apply_strided(&mut amps, 0, 1);
        }
        Ok(Statevector::from_raw(self.n_qubits, amps))
    }

    pub fn resource_count(&self, table: &CostTable) -> Result<ResourceReport> {
        let mut t_count = 0;
        let mut primitive_gate_count = 0;
        for op in &self.ops {
            t_count += table.t_cost(op.kind)?;
            primitive_gate_count += primitive_count(op.kind);
        }
        Ok(ResourceReport {
            t_count,
            macro_layers: self.ops.len() as u64,
            primitive_gate_count,
            qubit_count: self.n_qubits as u64,
        })
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (line_no, header) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "missing `qubits N` header"))?;
        let mut words = header.split_whitespace();
        let n = match (words.next(), words.next(), words.next()) {
            (Some("qubits"), Some(n), None) => n
                .parse::<usize>()
                .map_err(|e| Error::parse(line_no, format!("bad qubit count: {e}")))?,
            _ => return Err(Error::parse(line_no, "expected `qubits N`")),
        };
        let mut circuit = Circuit::new(n).map_err(|e| Error::parse(line_no, e.to_string()))?;

        for (line_no, line) in lines {
            let mut words = line.split_whitespace();
            let name = words.next().unwrap_or_default();
            let mut qubits = Vec::new();
            let mut phi = None;
            for word in words {
                if let Some(value) = word.strip_prefix("phi=") {
                    if phi.is_some() {
                        return Err(Error::parse(line_no, "phi given twice"));
                    }
                    let v: f64 = value
                        .parse()
                        .map_err(|e| Error::parse(line_no, format!("bad phi {value:?}: {e}")))?;
                    phi = Some(v);
                } else if phi.is_some() {
                    return Err(Error::parse(line_no, "phi must come last"));
                } else {
                    let q: usize = word
                        .parse()
                        .map_err(|e| Error::parse(line_no, format!("bad qubit {word:?}: {e}")))?;
                    qubits.push(q);
                }
            }
            let kind = GateKind::from_name(name, phi)
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
            circuit
                .push(kind, &qubits)
                .map_err(|e| Error::parse(line_no, e.to_string()))?;
        }
        Ok(circuit)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.n_qubits)?;
        for op in &self.ops {
            f.write_str(op.kind.name())?;
            for q in &op.qubits {
                write!(f, " {q}")?;
            }
            if let Some(phi) = op.kind.phi() {
                write!(f, " phi={phi}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for Circuit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Circuit::parse(s)
    }
}

/// Static resource totals for a circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ResourceReport {
    pub t_count: u64,
    /// Number of gate applications.
    pub macro_layers: u64,
    /// Gate count after expanding each application into its standard
    /// primitive network (see [`primitive_count`]).
    pub primitive_gate_count: u64,
    pub qubit_count: u64,
}

/// Primitive gates in the usual textbook network for each gate: the Toffoli
/// as 6 CNOT + 7 T/T† + 2 H, the controlled phase as 2 CNOT + 3 single-qubit
/// phases, everything else native.
pub fn primitive_count(kind: GateKind) -> u64 {
    match kind {
        GateKind::Ccx => 15,
        GateKind::Cp(_) => 5,
        _ => 1,
    }
}

const ANGLE_MATCH: f64 = 1e-12;

fn same_angle(a: f64, b: f64) -> bool {
    (a - b).abs() <= ANGLE_MATCH
}

/// T-cost per gate.
///
/// Fixed gates: `CCX` costs 7, `T` costs 1, the other Cliffords cost 0.
/// Parametric gates have defaults only at φ ∈ {0, π/2, π}: `CP(π/2)`
/// (controlled-S) costs 1 and every other default is Clifford. Anything else
/// needs an explicit entry via [`CostTable::with_t_cost`].
#[derive(Clone, Debug, Default)]
pub struct CostTable {
    overrides: Vec<(GateKind, u64)>,
}

impl CostTable {
    pub fn with_t_cost(mut self, kind: GateKind, cost: u64) -> Self {
        self.overrides.push((kind, cost));
        self
    }

    fn matches(entry: GateKind, kind: GateKind) -> bool {
        match (entry, kind) {
            (GateKind::P(a), GateKind::P(b)) | (GateKind::Cp(a), GateKind::Cp(b)) => {
                same_angle(a, b)
            }
            (a, b) => a == b,
        }
    }

    pub fn t_cost(&self, kind: GateKind) -> Result<u64> {
        if let Some(&(_, cost)) = self
            .overrides
            .iter()
            .rev()
            .find(|(entry, _)| Self::matches(*entry, kind))
        {
            return Ok(cost);
        }
        match kind {
            GateKind::Ccx => Ok(7),
            GateKind::T => Ok(1),
            GateKind::H
            | GateKind::X
            | GateKind::Y
            | GateKind::Z
            | GateKind::S
            | GateKind::Cnot => Ok(0),
            GateKind::Cp(phi) if same_angle(phi, FRAC_PI_2) => Ok(1),
            GateKind::P(phi) | GateKind::Cp(phi)
                if same_angle(phi, 0.0) || same_angle(phi, FRAC_PI_2) || same_angle(phi, PI) =>
            {
                Ok(0)
            }
            other => Err(Error::MissingTCost(other.to_string())),
        }
    }
}
