//! Dense complex linear algebra for registers of up to six qubits.
//!
//! Everything here is stored row-major with no sparsity. The largest object
//! the experiments touch is a 64×64 density matrix, so the cubic kernels are
//! cheap and the code favours plain loops over clever layouts.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

pub type Complex = Complex64;

pub(crate) const ZERO: Complex = Complex::new(0.0, 0.0);
pub(crate) const ONE: Complex = Complex::new(1.0, 0.0);

/// Off-diagonal Frobenius mass at which the Jacobi sweeps stop.
const JACOBI_TOLERANCE: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

fn all_finite(values: &[Complex]) -> bool {
    values.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

/// Square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex>,
}

impl ComplexMatrix {
    /// Builds a `dim`×`dim` matrix from row-major entries.
    pub fn new(dim: usize, entries: Vec<Complex>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        if !all_finite(&entries) {
            return Err(Error::NonFinite("matrix"));
        }
        Ok(Self { dim, entries })
    }

    /// Builds a matrix with real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::new(dim, entries.iter().map(|&x| Complex::new(x, 0.0)).collect())
    }

    pub fn from_diagonal(diagonal: &[Complex]) -> Result<Self> {
        let dim = diagonal.len();
        if dim == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if !all_finite(diagonal) {
            return Err(Error::NonFinite("diagonal"));
        }
        let mut m = Self::zeros(dim);
        for (i, &d) in diagonal.iter().enumerate() {
            m.entries[i * dim + i] = d;
        }
        Ok(m)
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = ONE;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut [Complex] {
        &mut self.entries
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex {
        self.entries[row * self.dim + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex) {
        self.entries[row * self.dim + col] = value;
    }

    pub fn column(&self, col: usize) -> Vec<Complex> {
        (0..self.dim).map(|r| self.get(r, col)).collect()
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    /// Matrix product `self · other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let out_row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                let b_row = &other.entries[k * n..(k + 1) * n];
                for (o, &b) in out_row.iter_mut().zip(b_row) {
                    *o += a * b;
                }
            }
        }
        Self::new(n, out)
    }

    /// Kronecker product; block `(i, j)` of the result is `self[i, j] · other`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let dim = n * m;
        let mut entries = vec![ZERO; dim * dim];
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                for k in 0..m {
                    for l in 0..m {
                        entries[(i * m + k) * dim + j * m + l] = a * other.get(k, l);
                    }
                }
            }
        }
        Self { dim, entries }
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut entries = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        Self { dim: n, entries }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Self::new(self.dim, entries)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Self::new(self.dim, entries)
    }

    pub fn scale(&self, factor: Complex) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|a[i, j] − δᵢⱼ|`.
    pub fn max_abs_deviation_from_identity(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let delta = if i == j { ONE } else { ZERO };
                worst = worst.max((self.get(i, j) - delta).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.entries.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// Deviation of `U†U` from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        // dims always agree here
        self.dagger()
            .matmul(self)
            .map(|m| m.max_abs_deviation_from_identity())
            .unwrap_or(f64::INFINITY)
    }

    /// Largest `|a[i, j] − conj(a[j, i])|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex]) -> Result<Vec<Complex>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok((0..self.dim)
            .map(|i| {
                self.entries[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Eigenvalues of a Hermitian matrix, ascending.
    ///
    /// The `n`×`n` Hermitian `A + iB` is mapped to the real symmetric
    /// `[[A, −B], [B, A]]`, whose spectrum is that of the original with every
    /// eigenvalue doubled; cyclic Jacobi rotations diagonalize it.
    pub fn hermitian_eigenvalues(&self) -> Result<Vec<f64>> {
        let n = self.dim;
        let m = 2 * n;
        let mut real = vec![0.0; m * m];
        for i in 0..n {
            for j in 0..n {
                let z = self.get(i, j);
                real[i * m + j] = z.re;
                real[(i + n) * m + j + n] = z.re;
                real[i * m + j + n] = -z.im;
                real[(i + n) * m + j] = z.im;
            }
        }
        let mut doubled = symmetric_eigenvalues(real, m)?;
        doubled.sort_by(f64::total_cmp);
        Ok(doubled.into_iter().step_by(2).collect())
    }
}

/// Cyclic Jacobi eigenvalue iteration for a real symmetric row-major matrix.
fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>> {
    let off_diagonal = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i * n + j] * a[i * n + j];
                }
            }
        }
        s.sqrt()
    };
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal(&a) < JACOBI_TOLERANCE {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    if !converged && off_diagonal(&a) >= JACOBI_TOLERANCE {
        return Err(Error::InvariantViolation(
            "Jacobi eigenvalue iteration did not converge".into(),
        ));
    }
    Ok((0..n).map(|i| a[i * n + i]).collect())
}

fn qubits_for_len(len: usize) -> Result<usize> {
    if len < 2 || !len.is_power_of_two() {
        return Err(Error::InvalidDimension(len));
    }
    Ok(len.trailing_zeros() as usize)
}

/// Normalized pure state on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex>,
}

impl Statevector {
    /// Wraps amplitudes that must already have unit norm (within 1e-10).
    pub fn new(amps: Vec<Complex>) -> Result<Self> {
        let n_qubits = qubits_for_len(amps.len())?;
        if !all_finite(&amps) {
            return Err(Error::NonFinite("statevector"));
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > 1e-10 {
            return Err(Error::NotNormalized(norm_sqr));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(mut amps: Vec<Complex>) -> Result<Self> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::NotNormalized(norm * norm));
        }
        for a in &mut amps {
            *a /= norm;
        }
        Self::new(amps)
    }

    /// Computational basis state `|index⟩`.
    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > usize::BITS as usize - 2 {
            return Err(Error::InvalidDimension(n_qubits));
        }
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::InvalidArgument(format!(
                "basis index {index} out of range for {n_qubits} qubits"
            )));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { n_qubits, amps })
    }

    pub(crate) fn from_raw(n_qubits: usize, amps: Vec<Complex>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex> {
        self.amps
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }
}

/// Draws a Haar-random pure state: i.i.d. standard complex Gaussian
/// components, normalized. Deterministic for a given generator state.
pub fn haar_random_state<R: Rng + ?Sized>(n_qubits: usize, rng: &mut R) -> Result<Statevector> {
    if n_qubits == 0 || n_qubits > 16 {
        return Err(Error::InvalidDimension(n_qubits));
    }
    let dim = 1usize << n_qubits;
    let amps = (0..dim)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(re, im)
        })
        .collect();
    Statevector::normalized(amps)
}

/// Mixed state on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    rho: ComplexMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace (both within 1e-10) and
    /// positivity (eigenvalues ≥ −1e-9).
    pub fn new(rho: ComplexMatrix) -> Result<Self> {
        let n_qubits = qubits_for_len(rho.dim())?;
        let dm = Self { n_qubits, rho };
        dm.check_physical(1e-10)?;
        let min_eig = dm.rho.hermitian_eigenvalues()?[0];
        if min_eig < -1e-9 {
            return Err(Error::NotPhysical(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(dm)
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(psi: &Statevector) -> Self {
        let dim = psi.dim();
        let mut rho = ComplexMatrix::zeros(dim);
        for (i, a) in psi.amps().iter().enumerate() {
            for (j, b) in psi.amps().iter().enumerate() {
                rho.set(i, j, a * b.conj());
            }
        }
        Self {
            n_qubits: psi.n_qubits(),
            rho,
        }
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > 16 {
            return Err(Error::InvalidDimension(n_qubits));
        }
        let dim = 1usize << n_qubits;
        Ok(Self {
            n_qubits,
            rho: ComplexMatrix::identity(dim).scale(Complex::new(1.0 / dim as f64, 0.0)),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut ComplexMatrix {
        &mut self.rho
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.rho
    }

    /// Cheap structural check: finite entries, Hermitian and unit trace
    /// within `tol`.
    pub fn check_physical(&self, tol: f64) -> Result<()> {
        if !all_finite(self.rho.entries()) {
            return Err(Error::NonFinite("density matrix"));
        }
        let herm = self.rho.hermiticity_deviation();
        if herm > tol {
            return Err(Error::NotPhysical(format!("hermiticity deviation {herm:e}")));
        }
        let trace = self.rho.trace();
        if (trace - ONE).norm() > tol {
            return Err(Error::NotPhysical(format!("trace {trace}")));
        }
        Ok(())
    }

    /// Reduced state on `keep`, in ascending register order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::EmptyKeepSet);
        }
        let n = self.n_qubits;
        let mut kept: Vec<usize> = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.len() != keep.len() || kept.iter().any(|&q| q >= n) {
            return Err(Error::InvalidQubits(format!(
                "keep set {keep:?} on {n} qubits"
            )));
        }
        let k = kept.len();
        let masks: Vec<usize> = kept.iter().map(|&q| 1 << (n - 1 - q)).collect();
        let kept_mask: usize = masks.iter().sum();
        let local = |global: usize| -> usize {
            masks
                .iter()
                .fold(0, |acc, &m| (acc << 1) | usize::from(global & m != 0))
        };
        let dim = 1usize << n;
        let mut out = ComplexMatrix::zeros(1 << k);
        for r in 0..dim {
            let lr = local(r);
            for c in 0..dim {
                if (r & !kept_mask) != (c & !kept_mask) {
                    continue;
                }
                let lc = local(c);
                let v = out.get(lr, lc) + self.rho.get(r, c);
                out.set(lr, lc, v);
            }
        }
        Ok(DensityMatrix {
            n_qubits: k,
            rho: out,
        })
    }

    /// `½ Σ |λᵢ(a − b)|`.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64> {
        let diff = self.rho.sub(&other.rho)?;
        let eig = diff.hermitian_eigenvalues()?;
        Ok(0.5 * eig.iter().map(|l| l.abs()).sum::<f64>())
    }
}

/// `⟨ψ|ρ|ψ⟩`.
pub fn state_fidelity(psi: &Statevector, rho: &DensityMatrix) -> Result<f64> {
    let rho_psi = rho.matrix().apply(psi.amps())?;
    let f: Complex = psi
        .amps()
        .iter()
        .zip(&rho_psi)
        .map(|(a, b)| a.conj() * b)
        .sum();
    Ok(f.re)
}
