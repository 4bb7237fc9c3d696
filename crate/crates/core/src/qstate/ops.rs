use nalgebra::SymmetricEigen;

use super::{BipartiteDims, CMatrix, Subsystem};
use crate::{Error, Result};

const MAX_ITER: usize = 10_000;

/// Reduced matrix after tracing out `traced`.
pub fn partial_trace_matrix(rho: &CMatrix, dims: BipartiteDims, traced: Subsystem) -> CMatrix {
    let (m, n) = (dims.m(), dims.n());
    match traced {
        Subsystem::B => CMatrix::from_fn(m, m, |i, j| {
            (0..n).map(|k| rho[(i * n + k, j * n + k)]).sum()
        }),
        Subsystem::A => CMatrix::from_fn(n, n, |k, l| {
            (0..m).map(|i| rho[(i * n + k, i * n + l)]).sum()
        }),
    }
}

/// Transpose on `A`: `(i k),(j l) ↦ (j k),(i l)`.
pub fn partial_transpose_matrix(rho: &CMatrix, dims: BipartiteDims) -> CMatrix {
    let n = dims.n();
    let d = dims.total();
    CMatrix::from_fn(d, d, |r, c| {
        let (i, k) = (r / n, r % n);
        let (j, l) = (c / n, c % n);
        rho[(j * n + k, i * n + l)]
    })
}

/// Realignment `R[(i·m+j),(k·n+l)] = ρ[(i·n+k),(j·n+l)]`, an `m² × n²` matrix.
/// Product states map to `vec(σ) vec(τ)ᵀ`.
pub fn realign_matrix(rho: &CMatrix, dims: BipartiteDims) -> CMatrix {
    let (m, n) = (dims.m(), dims.n());
    CMatrix::from_fn(m * m, n * n, |r, c| {
        let (i, j) = (r / m, r % m);
        let (k, l) = (c / n, c % n);
        rho[(i * n + k, j * n + l)]
    })
}

/// Sum of singular values.
pub fn trace_norm(x: &CMatrix) -> Result<f64> {
    if x.is_empty() {
        return Ok(0.0);
    }
    let svd = x
        .clone()
        .try_svd(false, false, f64::EPSILON, MAX_ITER)
        .ok_or_else(|| Error::Numerical("SVD did not converge".into()))?;
    Ok(svd.singular_values.iter().sum())
}

/// Eigenvalues of the Hermitian part of `x`, ascending.
pub fn hermitian_eigenvalues(x: &CMatrix) -> Result<Vec<f64>> {
    let h = (x + x.adjoint()).scale(0.5);
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, MAX_ITER)
        .ok_or_else(|| Error::Numerical("eigendecomposition did not converge".into()))?;
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    Ok(v)
}

/// Eigenpairs of a Hermitian matrix, eigenvalues descending.
pub(crate) fn hermitian_eigen(x: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let h = (x + x.adjoint()).scale(0.5);
    let eig = SymmetricEigen::try_new(h, f64::EPSILON, MAX_ITER)
        .ok_or_else(|| Error::Numerical("eigendecomposition did not converge".into()))?;
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let vals = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let d = x.nrows();
    let vecs = CMatrix::from_fn(d, order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    Ok((vals, vecs))
}
