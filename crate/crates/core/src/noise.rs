//! Depolarizing noise, exact density-matrix execution and empirical average
//! gate fidelity.
//!
//! Placement policy: after every gate application, each qubit the gate
//! touches goes through an independent single-qubit depolarizing channel
//! with the same rate `p`, whatever the gate's arity.
//!
//! Input states for fidelity estimates come from a splittable seed scheme:
//! state `i` at rate `p` on an `n`-qubit register is drawn from a ChaCha8
//! stream seeded with [`derive_seed`]`(seed, n, p, i)`. Circuits of equal
//! width therefore see the same inputs at each rate, and any sweep point
//! can be recomputed in isolation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::format::fmt_sig;
use crate::gates::{gate_matrix, LocalGate, MAX_QUBITS};
use crate::tensor::{haar_random_state, state_fidelity, ComplexMatrix, DensityMatrix};

/// Trace and Hermiticity drift tolerated after a full noisy run.
const CPTP_TOLERANCE: f64 = 1e-9;
const MAX_GRID_POINTS: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseModel {
    p: f64,
}

impl NoiseModel {
    pub fn new(p: f64) -> Result<Self> {
        check_probability(p)?;
        Ok(Self { p })
    }

    pub fn noiseless() -> Self {
        Self { p: 0.0 }
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

/// `ρ → (1−p)ρ + (p/3)(XρX + YρY + ZρZ)` on one qubit, in place.
///
/// Uses the twirl identity `Σ_{P∈{I,X,Y,Z}} PρP = 2·Tr_q(ρ)⊗I`: diagonal
/// blocks mix towards their average and coherences shrink by `1 − 4p/3`.
fn depolarize_in_place(rho: &mut ComplexMatrix, n: usize, qubit: usize, p: f64) {
    let dim = rho.dim();
    let mask = 1usize << (n - 1 - qubit);
    let shrink = 1.0 - 4.0 * p / 3.0;
    let mix = 2.0 * p / 3.0;
    let data = rho.entries_mut();
    for r in (0..dim).filter(|r| r & mask == 0) {
        for c in (0..dim).filter(|c| c & mask == 0) {
            let i00 = r * dim + c;
            let i01 = r * dim + (c | mask);
            let i10 = (r | mask) * dim + c;
            let i11 = (r | mask) * dim + (c | mask);
            let avg = data[i00] + data[i11];
            data[i00] = data[i00] * shrink + avg * mix;
            data[i11] = data[i11] * shrink + avg * mix;
            data[i01] *= shrink;
            data[i10] *= shrink;
        }
    }
}

pub fn depolarize_qubit(rho: &DensityMatrix, qubit: usize, p: f64) -> Result<DensityMatrix> {
    check_probability(p)?;
    let n = rho.n_qubits();
    if qubit >= n {
        return Err(Error::InvalidQubits(format!(
            "qubit {qubit} out of range for {n}-qubit state"
        )));
    }
    let mut out = rho.clone();
    depolarize_in_place(out.matrix_mut(), n, qubit, p);
    Ok(out)
}

/// Exact noisy evolution: `ρ ← UρU†` per gate, then depolarize every
/// touched qubit.
pub fn run_noisy(circuit: &Circuit, rho0: &DensityMatrix, model: NoiseModel) -> Result<DensityMatrix> {
    let n = circuit.n_qubits();
    if n > MAX_QUBITS {
        return Err(Error::Capacity { n, max: MAX_QUBITS });
    }
    if rho0.n_qubits() != n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: rho0.matrix().dim(),
        });
    }
    let dim = 1usize << n;
    let mut rho = rho0.clone();
    for op in circuit.ops() {
        let gate = LocalGate::new(&gate_matrix(op.kind), &op.qubits, n)?;
        let gate_conj = gate.conjugated();
        let m = rho.matrix_mut();
        let data = m.entries_mut();
        // left multiplication acts on each column
        for col in 0..dim {
            gate.apply_strided(data, col, dim);
        }
        // right multiplication by U† acts on each row with conj(U)
        for row in 0..dim {
            gate_conj.apply_strided(data, row * dim, 1);
        }
        if model.p > 0.0 {
            for &q in &op.qubits {
                depolarize_in_place(m, n, q, model.p);
            }
        }
    }
    Ok(rho)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for input state `index` at rate `p` on an `n_qubits` register.
pub fn derive_seed(seed: u64, n_qubits: usize, p: f64, index: u64) -> u64 {
    let mut h = splitmix64(seed);
    h = splitmix64(h ^ n_qubits as u64);
    h = splitmix64(h ^ p.to_bits());
    splitmix64(h ^ index)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelitySample {
    pub circuit_label: String,
    pub p: f64,
    pub mean_fidelity: f64,
    pub n_states: usize,
    pub seed: u64,
}

/// Mean of `⟨ψ_ideal|ρ_noisy|ψ_ideal⟩` over `n_states` Haar-random inputs.
pub fn avg_gate_fidelity(
    label: &str,
    circuit: &Circuit,
    model: NoiseModel,
    n_states: usize,
    seed: u64,
) -> Result<FidelitySample> {
    if n_states == 0 {
        return Err(Error::InvalidArgument("n_states must be at least 1".into()));
    }
    let n = circuit.n_qubits();
    let mut total = 0.0;
    for index in 0..n_states {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, n, model.p, index as u64));
        let psi = haar_random_state(n, &mut rng)?;
        let ideal = circuit.apply_to_state(&psi)?;
        let rho = run_noisy(circuit, &DensityMatrix::from_pure(&psi), model)?;
        rho.check_physical(CPTP_TOLERANCE)
            .map_err(|e| Error::InvariantViolation(format!("{label} at p={}: {e}", model.p)))?;
        let f = state_fidelity(&ideal, &rho)?;
        if !(-CPTP_TOLERANCE..=1.0 + CPTP_TOLERANCE).contains(&f) {
            return Err(Error::InvariantViolation(format!(
                "{label} at p={}: fidelity {f} outside [0, 1]",
                model.p
            )));
        }
        total += f;
    }
    Ok(FidelitySample {
        circuit_label: label.to_owned(),
        p: model.p,
        mean_fidelity: total / n_states as f64,
        n_states,
        seed,
    })
}

/// Noise rates for a sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PGrid(Vec<f64>);

impl Default for PGrid {
    /// Ten log-spaced rates from 1e-4 to 1e-1.
    fn default() -> Self {
        Self::log_spaced(1e-4, 1e-1, 10).expect("default grid is valid")
    }
}

fn power_of_ten(exponent: f64) -> f64 {
    let rounded = exponent.round();
    if (exponent - rounded).abs() < 1e-12 {
        // exact decimal for integral exponents
        format!("1e{}", rounded as i64).parse().unwrap_or(10f64.powf(exponent))
    } else {
        10f64.powf(exponent)
    }
}

impl PGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if points.len() > MAX_GRID_POINTS {
            return Err(Error::InvalidArgument(format!(
                "grid has {} points, limit {MAX_GRID_POINTS}",
                points.len()
            )));
        }
        for &p in &points {
            check_probability(p)?;
        }
        Ok(Self(points))
    }

    pub fn log_spaced(min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min > 0.0 && max >= min) {
            return Err(Error::InvalidArgument(format!(
                "log grid needs 0 < min <= max, got {min}..{max}"
            )));
        }
        if count == 0 {
            return Err(Error::EmptyGrid);
        }
        if count == 1 {
            return Self::new(vec![min]);
        }
        let (lo, hi) = (min.log10(), max.log10());
        let points = (0..count)
            .map(|k| match k {
                0 => min,
                k if k == count - 1 => max,
                k => power_of_ten(lo + (hi - lo) * k as f64 / (count - 1) as f64),
            })
            .collect();
        Self::new(points)
    }

    pub fn linear(min: f64, max: f64, count: usize) -> Result<Self> {
        if max.is_nan() || min.is_nan() || max < min {
            return Err(Error::InvalidArgument(format!("bad range {min}..{max}")));
        }
        match count {
            0 => Err(Error::EmptyGrid),
            1 => Self::new(vec![min]),
            _ => Self::new(
                (0..count)
                    .map(|k| min + (max - min) * k as f64 / (count - 1) as f64)
                    .collect(),
            ),
        }
    }

    /// Parses `min:max:<N>log`, `min:max:<N>lin`, or a comma-separated list.
    pub fn parse(spec: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidArgument(format!("bad p-grid {spec:?}: {why}"));
        let spec = spec.trim();
        let parts: Vec<&str> = spec.split(':').collect();
        match parts.as_slice() {
            [min, max, count] => {
                let min: f64 = min.trim().parse().map_err(|_| bad("min"))?;
                let max: f64 = max.trim().parse().map_err(|_| bad("max"))?;
                let count = count.trim();
                let (digits, log) = if let Some(d) = count.strip_suffix("log") {
                    (d, true)
                } else if let Some(d) = count.strip_suffix("lin") {
                    (d, false)
                } else {
                    return Err(bad("count must end in `log` or `lin`"));
                };
                let n: usize = digits.parse().map_err(|_| bad("count"))?;
                if n > MAX_GRID_POINTS {
                    return Err(bad("too many points"));
                }
                if log {
                    Self::log_spaced(min, max, n)
                } else {
                    Self::linear(min, max, n)
                }
            }
            [list] => {
                let points = list
                    .split(',')
                    .map(|s| s.trim().parse::<f64>().map_err(|_| bad("list entry")))
                    .collect::<Result<Vec<_>>>()?;
                Self::new(points)
            }
            _ => Err(bad("expected min:max:count or a list")),
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Every circuit at every rate, circuit-major. Points run in parallel; each
/// uses only its derived seeds so the output equals a sequential run.
pub fn sweep(
    circuits: &[(String, Circuit)],
    grid: &PGrid,
    n_states: usize,
    seed: u64,
) -> Result<Vec<FidelitySample>> {
    if grid.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let jobs: Vec<(&str, &Circuit, f64)> = circuits
        .iter()
        .flat_map(|(label, c)| grid.points().iter().map(move |&p| (label.as_str(), c, p)))
        .collect();
    jobs.into_par_iter()
        .map(|(label, c, p)| avg_gate_fidelity(label, c, NoiseModel::new(p)?, n_states, seed))
        .collect()
}

/// CSV with a seed comment line, then `circuit,p,mean_fidelity,n_states,seed`.
pub fn samples_csv(samples: &[FidelitySample], seed: u64) -> String {
    let mut out = format!("# seed={seed}\ncircuit,p,mean_fidelity,n_states,seed\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.circuit_label,
            fmt_sig(s.p, 10),
            fmt_sig(s.mean_fidelity, 10),
            s.n_states,
            s.seed
        ));
    }
    out
}

/// Sample for `label` at the grid point closest to `p` on a log scale.
pub fn sample_near<'a>(samples: &'a [FidelitySample], label: &str, p: f64) -> Option<&'a FidelitySample> {
    samples
        .iter()
        .filter(|s| s.circuit_label == label && s.p > 0.0)
        .min_by(|a, b| {
            let da = (a.p.log10() - p.log10()).abs();
            let db = (b.p.log10() - p.log10()).abs();
            da.total_cmp(&db)
        })
}
