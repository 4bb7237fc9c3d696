//! Extremal Rényi curves over the pure-state concurrence shell
//!
//! ```text
//! R_L(c) = min { H_α(μ) : μ ∈ Δ_m, √(2(1 − Σμ²)) = c }
//! R_U(c) = max { … }
//! ```
//!
//! Lagrange stationarity forces each stationary `μ` to take at most two
//! distinct nonzero values, `γ` (`n1` times) and `δ` (`n2` times). Enumerating
//! every `(n1, n2)` with `n1 + n2 ≤ m` therefore covers every interior
//! critical point and every face of the simplex.

mod oracle;
mod branches;

use serde::Serialize;

use crate::qstate::{max_concurrence, ALPHA_EPS, SUPPORT_CUTOFF};
use crate::{Error, Result};

pub use oracle::simplex_oracle;
pub use branches::{
    branch_for, check_alpha as check_branch_alpha, closed_branch, branch_value, branch_segment,
    pattern_curve, PatternCurve,
};

/// Slack accepted on `c` beyond `c_max` and on `γ, δ ∈ [0, 1]`.
const FEAS_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveMethod {
    Enumeration,
    Paper,
}

impl CurveMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            CurveMethod::Enumeration => "enumeration",
            CurveMethod::Paper => "paper",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

/// `μ = (γ × n1, δ × n2, 0 × (m − n1 − n2))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StationaryPattern {
    pub n1: usize,
    pub n2: usize,
    pub branch: Branch,
    pub gamma: f64,
    pub delta: f64,
}

impl StationaryPattern {
    pub fn d(&self) -> usize {
        self.n1 + self.n2
    }

    /// `(|n1γ + n2δ − 1|, |2(1 − n1γ² − n2δ²) − c²|)`
    pub fn residuals(&self, c: f64) -> (f64, f64) {
        let (n1, n2) = (self.n1 as f64, self.n2 as f64);
        let sum = n1 * self.gamma + n2 * self.delta;
        let sq = n1 * self.gamma * self.gamma + n2 * self.delta * self.delta;
        ((sum - 1.0).abs(), (2.0 * (1.0 - sq) - c * c).abs())
    }

    /// Full sorted Schmidt vector of length `m`.
    pub fn schmidt(&self, m: usize) -> Vec<f64> {
        let mut v = vec![self.gamma; self.n1];
        v.extend(std::iter::repeat_n(self.delta, self.n2));
        v.resize(m.max(self.d()), 0.0);
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }
}

/// Both roots `γ±` for the split `(n1, n2)`, keeping those with
/// `γ, δ ∈ [0, 1]`. When the radicand vanishes only the `+` root is returned.
pub fn gamma_solutions(n1: usize, n2: usize, c: f64) -> Vec<StationaryPattern> {
    if n1 == 0 || n2 == 0 {
        return Vec::new();
    }
    let (f1, f2) = (n1 as f64, n2 as f64);
    let s = 1.0 - c * c / 2.0;
    let rad = f1 * f1 - f1 * (f1 + f2) * (1.0 - f2 * s);
    if rad < -FEAS_TOL {
        return Vec::new();
    }
    let root = rad.max(0.0).sqrt();
    let mut out = Vec::with_capacity(2);
    let branches: &[(Branch, f64)] = if root == 0.0 {
        &[(Branch::Plus, 1.0)]
    } else {
        &[(Branch::Plus, 1.0), (Branch::Minus, -1.0)]
    };
    for &(branch, sign) in branches {
        let gamma = (f1 + sign * root) / (f1 * (f1 + f2));
        let delta = (1.0 - f1 * gamma) / f2;
        let ok = |x: f64| (-FEAS_TOL..=1.0 + FEAS_TOL).contains(&x);
        if ok(gamma) && ok(delta) {
            out.push(StationaryPattern {
                n1,
                n2,
                branch,
                gamma: gamma.clamp(0.0, 1.0),
                delta: delta.clamp(0.0, 1.0),
            });
        }
    }
    out
}

/// `H_α` of the pattern's Schmidt vector, in bits.
pub fn pattern_value(p: &StationaryPattern, alpha: f64) -> f64 {
    two_level_entropy(p.n1 as f64, p.gamma, p.n2 as f64, p.delta, alpha)
}

pub(crate) fn two_level_entropy(n1: f64, g: f64, n2: f64, d: f64, alpha: f64) -> f64 {
    let xlogx = |x: f64| if x > 0.0 { x * x.log2() } else { 0.0 };
    let v = if alpha == f64::INFINITY {
        -g.max(d).log2()
    } else if alpha == 0.0 {
        let count = |n: f64, x: f64| if x > SUPPORT_CUTOFF { n } else { 0.0 };
        (count(n1, g) + count(n2, d)).log2()
    } else if (alpha - 1.0).abs() < ALPHA_EPS {
        -(n1 * xlogx(g) + n2 * xlogx(d))
    } else {
        let pw = |x: f64| if x > 0.0 { x.powf(alpha) } else { 0.0 };
        (n1 * pw(g) + n2 * pw(d)).log2() / (1.0 - alpha)
    };
    v.max(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Witness {
    Pattern(StationaryPattern),
    /// `c = 0`: the product Schmidt vector.
    Product,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub c: f64,
    pub value: f64,
    pub witness: Witness,
}

fn check_inputs(c: f64, alpha: f64, m: usize) -> Result<f64> {
    if m < 2 {
        return Err(Error::InvalidDims {
            m,
            n: m,
            reason: "extremal curves need m >= 2",
        });
    }
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let cmax = max_concurrence(m);
    if !(0.0..=cmax + FEAS_TOL).contains(&c) {
        return Err(Error::OutOfRange {
            name: "c",
            value: c,
            lo: 0.0,
            hi: cmax,
        });
    }
    Ok(c.min(cmax))
}

/// Extremal `H_α` at concurrence `c`. `Enumeration` scans every stationary
/// pattern; `Paper` evaluates the closed-form two-level branches.
pub fn extremal_curve(
    c: f64,
    alpha: f64,
    m: usize,
    mode: Extremum,
    method: CurveMethod,
) -> Result<CurvePoint> {
    let c = check_inputs(c, alpha, m)?;
    if c == 0.0 {
        return Ok(CurvePoint {
            c,
            value: 0.0,
            witness: Witness::Product,
        });
    }
    match method {
        CurveMethod::Paper => branches::branch_point(c, alpha, m, mode),
        CurveMethod::Enumeration => Ok(enumerate(c, alpha, m, mode)),
    }
}

/// All stationary patterns at `c`, deduplicated: `(n1, n2, −)` is the same
/// vector as `(n2, n1, +)`, so only `+` roots are kept.
pub fn stationary_patterns(c: f64, m: usize) -> Vec<StationaryPattern> {
    let mut out = Vec::new();
    for n1 in 1..m {
        for n2 in 1..=(m - n1) {
            out.extend(
                gamma_solutions(n1, n2, c)
                    .into_iter()
                    .filter(|p| p.branch == Branch::Plus),
            );
        }
    }
    out
}

fn enumerate(c: f64, alpha: f64, m: usize, mode: Extremum) -> CurvePoint {
    let mut best: Option<(f64, StationaryPattern)> = None;
    for p in stationary_patterns(c, m) {
        let v = pattern_value(&p, alpha);
        let better = match (best, mode) {
            (None, _) => true,
            (Some((b, _)), Extremum::Min) => v < b,
            (Some((b, _)), Extremum::Max) => v > b,
        };
        if better {
            best = Some((v, p));
        }
    }
    // (1, m−1, +) is feasible on all of (0, c_max].
    let (value, p) = best.expect("the (1, m-1) pattern is always feasible");
    CurvePoint {
        c,
        value,
        witness: Witness::Pattern(p),
    }
}

/// `R_L` or `R_U` as a function of `c`, for hull construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExtremalCurve {
    pub alpha: f64,
    pub m: usize,
    pub mode: Extremum,
    pub method: CurveMethod,
}

impl ExtremalCurve {
    pub fn new(alpha: f64, m: usize, mode: Extremum, method: CurveMethod) -> Result<Self> {
        check_inputs(0.0, alpha, m)?;
        if method == CurveMethod::Paper {
            check_branch_alpha(alpha)?;
        }
        Ok(Self {
            alpha,
            m,
            mode,
            method,
        })
    }

    pub fn c_max(&self) -> f64 {
        max_concurrence(self.m)
    }

    pub fn eval(&self, c: f64) -> Result<f64> {
        Ok(extremal_curve(c, self.alpha, self.m, self.mode, self.method)?.value)
    }
}

#[cfg(test)]
mod tests;
