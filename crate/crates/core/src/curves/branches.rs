//! Closed-form two-level branches `γ±_{1,d−1}` on the segments
//! `c_{d−1} < c ≤ c_d`, `d = 2, …, m`, with `c_d = √(2(d−1)/d)`.
//!
//! For `α > 2` the minimum uses `γ⁺` and the maximum `γ⁻`; for `α < 2` the
//! roles swap, and at `α = 2` both reduce to `−log(1 − c²/2)`.

use super::{
    two_level_entropy, Branch, CurvePoint, Extremum, StationaryPattern, Witness, FEAS_TOL,
};
use crate::qstate::{max_concurrence, ALPHA_EPS};
use crate::{Error, Result};

pub fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::UnsupportedBranchAlpha(alpha));
    }
    Ok(())
}

/// Smallest `d ∈ {2, …, m}` with `c ≤ c_d`.
pub fn branch_segment(c: f64, m: usize) -> usize {
    (2..=m)
        .find(|&d| c <= max_concurrence(d) + FEAS_TOL)
        .unwrap_or(m)
}

fn branch_gamma(d: usize, c: f64, branch: Branch) -> f64 {
    let df = d as f64;
    let rad = 2.0 * (df - 1.0) * (df * (2.0 - c * c) - 2.0);
    let root = rad.max(0.0).sqrt();
    let g = match branch {
        Branch::Plus => (2.0 + root) / (2.0 * df),
        Branch::Minus => (2.0 - root) / (2.0 * df),
    };
    g.clamp(0.0, 1.0)
}

/// The pattern `(γ±_{1,d−1}, δ × (d−1))`. Its entropy is
/// `(1/(1−α)) log[γ^α + (d−1)^{1−α}(1−γ)^α]`.
pub fn closed_branch(d: usize, c: f64, branch: Branch) -> StationaryPattern {
    let gamma = branch_gamma(d, c, branch);
    let delta = ((1.0 - gamma) / (d - 1) as f64).max(0.0);
    StationaryPattern {
        n1: 1,
        n2: d - 1,
        branch,
        gamma,
        delta,
    }
}

/// `γ⁺` for the minimum when `α > 2`, else `γ⁻`; the reverse for the maximum.
pub fn branch_for(alpha: f64, mode: Extremum) -> Branch {
    match (mode, alpha > 2.0) {
        (Extremum::Min, true) | (Extremum::Max, false) => Branch::Plus,
        _ => Branch::Minus,
    }
}

/// Entropy of the segment-`d` branch at `c`, without choosing the segment.
pub fn branch_value(d: usize, c: f64, alpha: f64, mode: Extremum) -> f64 {
    if (alpha - 2.0).abs() < ALPHA_EPS {
        return (-(1.0 - c * c / 2.0).log2()).max(0.0);
    }
    let p = closed_branch(d, c, branch_for(alpha, mode));
    two_level_entropy(1.0, p.gamma, p.n2 as f64, p.delta, alpha)
}

pub(super) fn branch_point(c: f64, alpha: f64, m: usize, mode: Extremum) -> Result<CurvePoint> {
    check_alpha(alpha)?;
    let d = branch_segment(c, m);
    let p = closed_branch(d, c, branch_for(alpha, mode));
    Ok(CurvePoint {
        c,
        value: branch_value(d, c, alpha, mode),
        witness: Witness::Pattern(p),
    })
}

/// `R_{n1 n2}(c)`: the `γ⁺` pattern with `n1` large and `n2` small entries,
/// on `max(c_{n1}, c_{n2}) ≤ c ≤ c_{n1+n2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PatternCurve {
    pub n1: usize,
    pub n2: usize,
    pub alpha: f64,
}

impl PatternCurve {
    pub fn domain(&self) -> (f64, f64) {
        (
            max_concurrence(self.n1).max(max_concurrence(self.n2)),
            max_concurrence(self.n1 + self.n2),
        )
    }

    pub fn label(&self) -> String {
        format!("R{}{}", self.n1, self.n2)
    }

    /// `None` outside the domain.
    pub fn eval(&self, c: f64) -> Option<f64> {
        let (lo, hi) = self.domain();
        if c < lo - FEAS_TOL || c > hi + FEAS_TOL {
            return None;
        }
        pattern_curve(self.n1, self.n2, c, self.alpha)
    }
}

/// `R_{n1 n2}(c)` without the domain restriction; `None` when infeasible.
pub fn pattern_curve(n1: usize, n2: usize, c: f64, alpha: f64) -> Option<f64> {
    super::gamma_solutions(n1, n2, c)
        .into_iter()
        .find(|p| p.branch == Branch::Plus)
        .map(|p| super::pattern_value(&p, alpha))
}
