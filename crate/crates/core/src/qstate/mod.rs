//! Dense complex linear algebra over a bipartite space `A ⊗ B`.
//!
//! Composite basis index for `|i⟩_A |j⟩_B` is `i·n + j` (row-major), with
//! `m = dim A ≤ n = dim B`. Inputs with `dim A > dim B` are relabeled by
//! swapping the factors on construction.

mod entropy;
pub mod file;
mod ops;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use entropy::{renyi_entropy, renyi_unchecked, shannon_entropy, ALPHA_EPS, SUPPORT_CUTOFF};
pub use ops::{
    hermitian_eigenvalues, partial_trace_matrix, partial_transpose_matrix, realign_matrix,
    trace_norm,
};
pub(crate) use ops::hermitian_eigen;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Residual tolerances used to accept a matrix as a density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub herm: f64,
    pub psd: f64,
    pub trace: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: 1e-9,
            psd: 1e-9,
            trace: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteDims {
    m: usize,
    n: usize,
}

impl BipartiteDims {
    /// Requires `1 ≤ m ≤ n`. Use [`DensityMatrix::from_subsystems`] to relabel
    /// states given with the larger factor first.
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidDims {
                m,
                n,
                reason: "dimensions must be positive",
            });
        }
        if m > n {
            return Err(Error::InvalidDims {
                m,
                n,
                reason: "expected m <= n",
            });
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn total(&self) -> usize {
        self.m * self.n
    }

    /// Largest pure-state concurrence `√(2(m−1)/m)`.
    pub fn max_concurrence(&self) -> f64 {
        max_concurrence(self.m)
    }
}

/// `√(2(d−1)/d)`, the concurrence of the uniform Schmidt vector on `d` terms.
pub fn max_concurrence(d: usize) -> f64 {
    let d = d as f64;
    (2.0 * (d - 1.0) / d).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Residuals of the three density-matrix conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidationReport {
    /// `max |M_ij − conj(M_ji)|`
    pub hermiticity: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
    /// `|Tr M − 1|`
    pub trace_residual: f64,
}

impl ValidationReport {
    pub fn violations(&self, tol: &Tolerances) -> Vec<String> {
        let mut out = Vec::new();
        if !(self.hermiticity <= tol.herm) {
            out.push(format!(
                "hermiticity residual {:e} exceeds {:e}",
                self.hermiticity, tol.herm
            ));
        }
        if !(self.min_eigenvalue >= -tol.psd) {
            out.push(format!(
                "minimum eigenvalue {:e} below -{:e}",
                self.min_eigenvalue, tol.psd
            ));
        }
        if !(self.trace_residual <= tol.trace) {
            out.push(format!(
                "trace residual {:e} exceeds {:e}",
                self.trace_residual, tol.trace
            ));
        }
        out
    }

    pub fn is_valid(&self, tol: &Tolerances) -> bool {
        self.violations(tol).is_empty()
    }
}

/// A matrix on `A ⊗ B` together with its bipartition. Construction only checks
/// the shape; call [`DensityMatrix::validate`] for the physical conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: BipartiteDims,
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(dims: BipartiteDims, entries: CMatrix) -> Result<Self> {
        let d = dims.total();
        if entries.nrows() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: entries.nrows(),
            });
        }
        if entries.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: entries.ncols(),
            });
        }
        Ok(Self { dims, entries })
    }

    /// Builds a state given as `dim_a ⊗ dim_b`, swapping the tensor factors
    /// when `dim_a > dim_b` so that the stored `m ≤ n`.
    pub fn from_subsystems(dim_a: usize, dim_b: usize, entries: CMatrix) -> Result<Self> {
        if dim_a <= dim_b {
            return Self::new(BipartiteDims::new(dim_a, dim_b)?, entries);
        }
        let dims = BipartiteDims::new(dim_b, dim_a)?;
        let d = dims.total();
        if entries.nrows() != d || entries.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: entries.nrows().max(entries.ncols()),
            });
        }
        let swapped = CMatrix::from_fn(d, d, |r, c| {
            entries[(swap_inv(r, dim_a, dim_b), swap_inv(c, dim_a, dim_b))]
        });
        Self::new(dims, swapped)
    }

    pub fn from_pure(psi: &PureState) -> Self {
        let a = psi.amplitudes();
        Self {
            dims: psi.dims(),
            entries: a * a.adjoint(),
        }
    }

    /// Identity over `m·n`, i.e. the maximally mixed state.
    pub fn maximally_mixed(dims: BipartiteDims) -> Self {
        let d = dims.total();
        Self {
            dims,
            entries: CMatrix::identity(d, d).scale(1.0 / d as f64),
        }
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        validate_density(self)
    }

    pub fn partial_trace(&self, traced: Subsystem) -> CMatrix {
        partial_trace_matrix(&self.entries, self.dims, traced)
    }

    pub fn partial_transpose(&self) -> CMatrix {
        partial_transpose_matrix(&self.entries, self.dims)
    }

    pub fn realign(&self) -> CMatrix {
        realign_matrix(&self.entries, self.dims)
    }

    /// `Tr ρ²`
    pub fn purity(&self) -> f64 {
        frobenius_sq(&self.entries)
    }

    /// `(Tr ρ_A², Tr ρ_B²)`
    pub fn reduced_purities(&self) -> (f64, f64) {
        (
            frobenius_sq(&self.partial_trace(Subsystem::B)),
            frobenius_sq(&self.partial_trace(Subsystem::A)),
        )
    }

    /// Eigenvalues of the Hermitian part, ascending.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        hermitian_eigenvalues(&self.entries)
    }
}

fn swap_inv(r: usize, dim_a: usize, dim_b: usize) -> usize {
    // r = j·dim_a + i in the relabeled (B ⊗ A) space; original index i·dim_b + j.
    let (j, i) = (r / dim_a, r % dim_a);
    i * dim_b + j
}

fn frobenius_sq(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Residual report for hermiticity, positivity and unit trace.
pub fn validate_density(rho: &DensityMatrix) -> Result<ValidationReport> {
    let m = rho.entries();
    let d = m.nrows();
    let mut herm = 0.0f64;
    for i in 0..d {
        for j in i..d {
            herm = herm.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    let hermitian_part = (m + m.adjoint()).scale(0.5);
    let evals = hermitian_eigenvalues(&hermitian_part)?;
    let min_eigenvalue = evals.first().copied().unwrap_or(0.0);
    let trace_residual = (m.trace() - Complex64::new(1.0, 0.0)).norm();
    Ok(ValidationReport {
        hermiticity: herm,
        min_eigenvalue,
        trace_residual,
    })
}

/// Unit vector on `A ⊗ B`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dims: BipartiteDims,
    amplitudes: CVector,
}

impl PureState {
    /// Rejects vectors whose norm differs from one by more than `1e-9`.
    pub fn new(dims: BipartiteDims, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch {
                expected: dims.total(),
                actual: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > Tolerances::default().trace {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { dims, amplitudes })
    }

    /// Rescales a nonzero vector to unit norm.
    pub fn normalized(dims: BipartiteDims, amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(dims, amplitudes.unscale(norm))
    }

    /// Same relabeling rule as [`DensityMatrix::from_subsystems`].
    pub fn from_subsystems(dim_a: usize, dim_b: usize, amplitudes: CVector) -> Result<Self> {
        if dim_a <= dim_b {
            return Self::new(BipartiteDims::new(dim_a, dim_b)?, amplitudes);
        }
        let dims = BipartiteDims::new(dim_b, dim_a)?;
        if amplitudes.len() != dims.total() {
            return Err(Error::DimensionMismatch {
                expected: dims.total(),
                actual: amplitudes.len(),
            });
        }
        let swapped = CVector::from_fn(dims.total(), |r, _| amplitudes[swap_inv(r, dim_a, dim_b)]);
        Self::new(dims, swapped)
    }

    pub fn dims(&self) -> BipartiteDims {
        self.dims
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// Amplitudes reshaped to the `m × n` coefficient matrix `Ψ_ij`.
    pub fn coefficient_matrix(&self) -> CMatrix {
        let (m, n) = (self.dims.m(), self.dims.n());
        CMatrix::from_fn(m, n, |i, j| self.amplitudes[i * n + j])
    }

    pub fn schmidt_vector(&self) -> Result<SchmidtVector> {
        schmidt_vector(self)
    }
}

/// Squared Schmidt coefficients, sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtVector {
    mu: Vec<f64>,
}

impl SchmidtVector {
    /// Accepts entries in `[−1e−9, 1+1e−9]` summing to one within `1e−9`;
    /// clips tiny negatives to zero and sorts.
    pub fn new(mut mu: Vec<f64>) -> Result<Self> {
        let tol = Tolerances::default().trace;
        if mu.is_empty() {
            return Err(Error::InvalidSchmidt("empty vector".into()));
        }
        if let Some(bad) = mu
            .iter()
            .find(|&&x| !x.is_finite() || x < -tol || x > 1.0 + tol)
        {
            return Err(Error::InvalidSchmidt(format!("entry {bad} outside [0, 1]")));
        }
        let sum: f64 = mu.iter().sum();
        if (sum - 1.0).abs() > tol {
            return Err(Error::InvalidSchmidt(format!("entries sum to {sum}")));
        }
        for x in mu.iter_mut() {
            *x = x.clamp(0.0, 1.0);
        }
        mu.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { mu })
    }

    /// Pads with zeros (or drops the smallest entries) to length `len`.
    pub fn with_len(mut self, len: usize) -> Result<Self> {
        self.mu.resize(len, 0.0);
        Self::new(self.mu)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.mu
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }

    /// Largest coefficient `μ₁`.
    pub fn max(&self) -> f64 {
        self.mu[0]
    }

    /// `Σ μ_i²`, the purity of the reduced state.
    pub fn purity(&self) -> f64 {
        self.mu.iter().map(|x| x * x).sum()
    }
}

/// Eigenvalues of `ρ_A` for `|ψ⟩`, via the singular values of `Ψ`.
pub fn schmidt_vector(psi: &PureState) -> Result<SchmidtVector> {
    let norm = psi.amplitudes().norm();
    if (norm - 1.0).abs() > Tolerances::default().trace {
        return Err(Error::NotNormalized(norm));
    }
    let svd = psi
        .coefficient_matrix()
        .try_svd(false, false, f64::EPSILON, 10_000)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    let mut mu: Vec<f64> = svd.singular_values.iter().map(|s| s * s).collect();
    mu.resize(psi.dims().m(), 0.0);
    // Renormalize away rounding in the squared singular values.
    let sum: f64 = mu.iter().sum();
    for x in mu.iter_mut() {
        *x /= sum;
    }
    SchmidtVector::new(mu)
}
