use super::SchmidtVector;
use crate::{Error, Result};

/// `α` within this distance of one is evaluated as the Shannon limit.
pub const ALPHA_EPS: f64 = 1e-6;

/// Probabilities at or below this count as zero for the `α = 0` support size.
pub const SUPPORT_CUTOFF: f64 = 1e-12;

/// Rényi-`α` entropy in bits. `α = +∞` gives the min-entropy.
pub fn renyi_entropy(mu: &SchmidtVector, alpha: f64) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    Ok(renyi_unchecked(mu.as_slice(), alpha))
}

/// Same as [`renyi_entropy`] on a raw probability vector; `α ≥ 0` is assumed.
pub fn renyi_unchecked(p: &[f64], alpha: f64) -> f64 {
    if alpha == f64::INFINITY {
        let max = p.iter().copied().fold(0.0f64, f64::max);
        return -max.log2();
    }
    if alpha == 0.0 {
        let support = p.iter().filter(|&&x| x > SUPPORT_CUTOFF).count();
        return (support as f64).log2();
    }
    if (alpha - 1.0).abs() < ALPHA_EPS {
        return shannon_entropy(p);
    }
    let s: f64 = p.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(alpha)).sum();
    (s.log2() / (1.0 - alpha)).max(0.0)
}

/// `−Σ p log₂ p` with `0 log 0 = 0`.
pub fn shannon_entropy(p: &[f64]) -> f64 {
    -p.iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * x.log2())
        .sum::<f64>()
}
