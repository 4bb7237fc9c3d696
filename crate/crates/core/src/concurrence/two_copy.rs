//! Observables on two copies `A₁B₁A₂B₂` whose expectations on `ρ ⊗ ρ`
//! reproduce the purity expressions used by the bracket.
//!
//! With `S_X` the swap of the two copies of `X` and `P_± = (I ± S)/2`:
//! `V₁ = 4(P₋⁽¹⁾ − P₊⁽¹⁾)P₋⁽²⁾`, `V₂ = 4P₋⁽¹⁾(P₋⁽²⁾ − P₊⁽²⁾)`,
//! `K₁ = 4P₋⁽¹⁾`, `K₂ = 4P₋⁽²⁾`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::qstate::{BipartiteDims, CMatrix, DensityMatrix};
use crate::{Error, Result};

/// Largest `m·n` accepted; the doubled space is `(m·n)²`.
pub const MAX_LOCAL_DIM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObservableKind {
    V1,
    V2,
    K1,
    K2,
}

impl ObservableKind {
    pub const ALL: [ObservableKind; 4] = [
        ObservableKind::V1,
        ObservableKind::V2,
        ObservableKind::K1,
        ObservableKind::K2,
    ];
}

#[derive(Debug, Clone)]
pub struct TwoCopyObservable {
    pub which: ObservableKind,
    pub matrix: DMatrix<f64>,
}

/// `(P₊, P₋)` for the swap of the two copies of subsystem `A` (`first`) or `B`.
pub fn swap_projectors(dims: BipartiteDims, first: bool) -> (DMatrix<f64>, DMatrix<f64>) {
    let s = swap_operator(dims, first);
    let id = DMatrix::<f64>::identity(s.nrows(), s.ncols());
    ((&id + &s) * 0.5, (&id - &s) * 0.5)
}

fn swap_operator(dims: BipartiteDims, first: bool) -> DMatrix<f64> {
    let (m, n) = (dims.m(), dims.n());
    let d = m * n;
    let mut s = DMatrix::zeros(d * d, d * d);
    for a1 in 0..m {
        for b1 in 0..n {
            for a2 in 0..m {
                for b2 in 0..n {
                    let src = (a1 * n + b1) * d + a2 * n + b2;
                    let dst = if first {
                        (a2 * n + b1) * d + a1 * n + b2
                    } else {
                        (a1 * n + b2) * d + a2 * n + b1
                    };
                    s[(dst, src)] = 1.0;
                }
            }
        }
    }
    s
}

impl TwoCopyObservable {
    pub fn build(which: ObservableKind, dims: BipartiteDims) -> Result<Self> {
        if dims.total() > MAX_LOCAL_DIM {
            return Err(Error::TooLarge(dims.total()));
        }
        let (p1, m1) = swap_projectors(dims, true);
        let (p2, m2) = swap_projectors(dims, false);
        let matrix = match which {
            ObservableKind::V1 => (&m1 - &p1) * &m2 * 4.0,
            ObservableKind::V2 => &m1 * (&m2 - &p2) * 4.0,
            ObservableKind::K1 => m1 * 4.0,
            ObservableKind::K2 => m2 * 4.0,
        };
        Ok(Self { which, matrix })
    }

    /// `Tr(ρ ⊗ ρ X)`
    pub fn expectation(&self, rho: &DensityMatrix) -> f64 {
        let r = rho.entries();
        let rr: CMatrix = r.kronecker(r);
        let x = self.matrix.map(|v| Complex64::new(v, 0.0));
        (rr * x).trace().re
    }
}

/// `|Tr(ρ⊗ρ X) − target|` for `X = V₁, V₂, K₁, K₂`, where the targets are
/// `2(Trρ² − Trρ_A²)`, `2(Trρ² − Trρ_B²)`, `2(1 − Trρ_A²)`, `2(1 − Trρ_B²)`.
pub fn two_copy_identity_check(rho: &DensityMatrix) -> Result<[f64; 4]> {
    let p = rho.purity();
    let (pa, pb) = rho.reduced_purities();
    let targets = [
        2.0 * (p - pa),
        2.0 * (p - pb),
        2.0 * (1.0 - pa),
        2.0 * (1.0 - pb),
    ];
    let mut out = [0.0; 4];
    for (k, which) in ObservableKind::ALL.into_iter().enumerate() {
        let obs = TwoCopyObservable::build(which, rho.dims())?;
        out[k] = (obs.expectation(rho) - targets[k]).abs();
    }
    Ok(out)
}
