//! Companion measures and inequality checks against `E_α`.
//!
//! Every check is normalized to the form `lhs ≥ rhs` and passes when
//! `lhs − rhs ≥ −1e-9`.

use serde::Serialize;

use crate::hull::{BoundsOptions, HullCache};
use crate::qstate::{renyi_entropy, shannon_entropy, trace_norm, ALPHA_EPS};
use crate::states::{
    random_density_with, random_pure_with, sample_rng, DecompositionSampler,
};
use crate::{evaluate_bounds, BipartiteDims, DensityMatrix, Error, Result, SchmidtVector};

pub const CHECK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Measure {
    Eof,
    Gm,
    Ln,
    GConc,
    Renyi,
}

impl Measure {
    pub fn as_str(&self) -> &'static str {
        match self {
            Measure::Eof => "EOF",
            Measure::Gm => "GM",
            Measure::Ln => "LN",
            Measure::GConc => "GConc",
            Measure::Renyi => "ERaE",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureValue {
    pub measure: Measure,
    pub value: f64,
    pub alpha: Option<f64>,
}

/// Entanglement of formation of a pure state, `S(ρ_A)` in bits.
pub fn eof_pure(mu: &SchmidtVector) -> f64 {
    shannon_entropy(mu.as_slice())
}

/// Geometric measure of a pure state, `−log μ_max`.
pub fn gm_pure(mu: &SchmidtVector) -> f64 {
    -mu.max().log2()
}

/// `m (μ₁⋯μ_m)^{1/m}` over all `m` entries of `μ`, so rank-deficient states
/// give 0.
pub fn g_concurrence_pure(mu: &SchmidtVector) -> f64 {
    let m = mu.len() as f64;
    let log_mean = mu.as_slice().iter().map(|x| x.ln()).sum::<f64>() / m;
    m * log_mean.exp()
}

/// `log₂ ‖ρ^{T_A}‖₁`, clamped at 0.
pub fn log_negativity(rho: &DensityMatrix) -> Result<f64> {
    Ok(trace_norm(&rho.partial_transpose())?.log2().max(0.0))
}

pub fn pure_measures(mu: &SchmidtVector, alphas: &[f64]) -> Result<Vec<MeasureValue>> {
    let mut out = vec![
        MeasureValue {
            measure: Measure::Eof,
            value: eof_pure(mu),
            alpha: None,
        },
        MeasureValue {
            measure: Measure::Gm,
            value: gm_pure(mu),
            alpha: None,
        },
        MeasureValue {
            measure: Measure::GConc,
            value: g_concurrence_pure(mu),
            alpha: None,
        },
    ];
    for &a in alphas {
        out.push(MeasureValue {
            measure: Measure::Renyi,
            value: renyi_entropy(mu, a)?,
            alpha: Some(a),
        });
    }
    Ok(out)
}

/// One inequality `lhs ≥ rhs`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
    pub pass: bool,
}

impl InequalityCheck {
    pub fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let residual = lhs - rhs;
        Self {
            name: name.into(),
            lhs,
            rhs,
            residual,
            pass: residual >= -CHECK_TOL || (lhs.is_infinite() && lhs > 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    pub eof: f64,
    pub checks: Vec<InequalityCheck>,
}

impl MonotonicityReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// `H_α(μ)` along a sorted `alphas`, checking that it is nonincreasing and
/// that `H_α ≥ S ≥ H_β` for `α ≤ 1 ≤ β`.
pub fn alpha_monotonicity_check(mu: &SchmidtVector, alphas: &[f64]) -> Result<MonotonicityReport> {
    let values: Vec<f64> = alphas
        .iter()
        .map(|&a| renyi_entropy(mu, a))
        .collect::<Result<_>>()?;
    let eof = eof_pure(mu);
    let mut checks = Vec::new();
    for k in 1..alphas.len() {
        checks.push(InequalityCheck::new(
            format!("H_{} >= H_{}", alphas[k - 1], alphas[k]),
            values[k - 1],
            values[k],
        ));
    }
    for (&a, &v) in alphas.iter().zip(&values) {
        if a <= 1.0 {
            checks.push(InequalityCheck::new(format!("H_{a} >= EOF"), v, eof));
        }
        if a >= 1.0 {
            checks.push(InequalityCheck::new(format!("EOF >= H_{a}"), eof, v));
        }
    }
    Ok(MonotonicityReport {
        alphas: alphas.to_vec(),
        values,
        eof,
        checks,
    })
}

/// Which quantity plays the role of the geometric measure in the lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GmVariant {
    /// `−Σ p_i log μ_{i,1}²` for `α ≠ 1` and `−Σ p_i log μ_{i,1}` at `α = 1`,
    /// the quantities the proof manipulates.
    Squared,
    /// `−Σ p_i log μ_{i,1}`, the definition `G_l = −log max|⟨φ|ψ⟩|²`.
    Definitional,
}

impl GmVariant {
    pub fn as_str(&self) -> &'static str {
        match self {
            GmVariant::Squared => "squared",
            GmVariant::Definitional => "definitional",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GmLemmaReport {
    pub squared: InequalityCheck,
    pub definitional: InequalityCheck,
}

/// Linear relation between the geometric measure and `E_α`, evaluated on a
/// weighted family of Schmidt vectors (one term for a pure state). `d` is the
/// smaller local dimension.
pub fn gm_lemma_check(terms: &[(f64, SchmidtVector)], alpha: f64, d: usize) -> Result<GmLemmaReport> {
    if !(alpha > 0.0) || alpha.is_infinite() {
        return Err(Error::InvalidAlpha(alpha));
    }
    let mut e_avg = 0.0;
    let mut g_def = 0.0;
    for (p, mu) in terms {
        e_avg += p * renyi_entropy(mu, alpha)?;
        g_def += p * gm_pure(mu);
    }
    let logd = (d as f64).log2();
    let check = |variant: GmVariant| {
        let g = match variant {
            GmVariant::Squared if (alpha - 1.0).abs() >= ALPHA_EPS => 2.0 * g_def,
            _ => g_def,
        };
        let tag = variant.as_str();
        if (alpha - 1.0).abs() < ALPHA_EPS {
            InequalityCheck::new(format!("gm lemma a=1 ({tag})"), e_avg, g)
        } else if alpha > 1.0 {
            InequalityCheck::new(
                format!("gm lemma a>1 ({tag})"),
                alpha / (2.0 * (alpha - 1.0)) * g,
                e_avg,
            )
        } else {
            InequalityCheck::new(
                format!("gm lemma a<1 ({tag})"),
                logd / (1.0 - alpha),
                e_avg + alpha / (2.0 * (1.0 - alpha)) * g,
            )
        }
    };
    Ok(GmLemmaReport {
        squared: check(GmVariant::Squared),
        definitional: check(GmVariant::Definitional),
    })
}

/// Admissible `α` for multiplier `n`: `1/2 ≤ α ≤ (2n − 1)/(2n)`.
pub fn ln_window(n: u32) -> (f64, f64) {
    let n = n as f64;
    (0.5, (2.0 * n - 1.0) / (2.0 * n))
}

fn check_ln_window(alpha: f64, n: u32) -> Result<()> {
    let (lo, hi) = ln_window(n);
    if n == 0 || !(lo - 1e-12..=hi + 1e-12).contains(&alpha) {
        return Err(Error::OutOfRange {
            name: "alpha",
            value: alpha,
            lo,
            hi,
        });
    }
    Ok(())
}

/// `n·LN(ψ) ≥ H_α(μ(ψ))` for a pure state, where `LN(ψ) = 2 log Σ√μ_j`.
pub fn ln_inequality_pure(mu: &SchmidtVector, alpha: f64, n: u32) -> Result<InequalityCheck> {
    check_ln_window(alpha, n)?;
    let ln = 2.0 * mu.as_slice().iter().map(|x| x.sqrt()).sum::<f64>().log2();
    Ok(InequalityCheck::new(
        format!("{n}*LN >= E_{alpha}"),
        n as f64 * ln,
        renyi_entropy(mu, alpha)?,
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LnMixedReport {
    pub log_negativity: f64,
    /// `n·LN(ρ) ≥ e_low`, implied by `n·LN ≥ E_α` whenever the latter holds.
    pub versus_lower_bound: InequalityCheck,
    /// `n·LN(ρ) ≥ Σ p_i E_α(ψ_i)` for a supplied decomposition. Not implied by
    /// `n·LN ≥ E_α`: a separable mixture of Bell states has `LN = 0` but a
    /// decomposition average of 1.
    pub versus_decomposition: Option<InequalityCheck>,
    /// `n·LN(ρ) ≥` a sampled roof value, which only bounds `E_α` from above.
    pub versus_roof_estimate: Option<InequalityCheck>,
}

pub fn ln_inequality_mixed(
    rho: &DensityMatrix,
    alpha: f64,
    n: u32,
    e_low: f64,
    decomposition_average: Option<f64>,
    roof_estimate: Option<f64>,
) -> Result<LnMixedReport> {
    check_ln_window(alpha, n)?;
    let ln = log_negativity(rho)?;
    let lhs = n as f64 * ln;
    let name = |what: &str| format!("{n}*LN >= {what}");
    Ok(LnMixedReport {
        log_negativity: ln,
        versus_lower_bound: InequalityCheck::new(name("e_low"), lhs, e_low),
        versus_decomposition: decomposition_average
            .map(|v| InequalityCheck::new(name("decomposition average"), lhs, v)),
        versus_roof_estimate: roof_estimate.map(|v| InequalityCheck::new(name("roof estimate"), lhs, v)),
    })
}

/// `E_α ≤ (α/(1−α)) log G + log d` for `α > 1`, reversed for `0 < α < 1`,
/// with `d = μ.len()`. A zero coefficient makes the right side `+∞` (`α > 1`)
/// or `−∞` (`α < 1`), and the check passes vacuously.
pub fn gconc_inequality_check(mu: &SchmidtVector, alpha: f64) -> Result<InequalityCheck> {
    if !(alpha > 0.0) || (alpha - 1.0).abs() < ALPHA_EPS || alpha.is_infinite() {
        return Err(Error::InvalidAlpha(alpha));
    }
    let e = renyi_entropy(mu, alpha)?;
    let g = g_concurrence_pure(mu);
    let logd = (mu.len() as f64).log2();
    let bound = if g > 0.0 {
        alpha / (1.0 - alpha) * g.log2() + logd
    } else if alpha > 1.0 {
        f64::INFINITY
    } else {
        f64::NEG_INFINITY
    };
    Ok(if alpha > 1.0 {
        InequalityCheck::new(format!("G-conc a={alpha} upper"), bound, e)
    } else {
        InequalityCheck::new(format!("G-conc a={alpha} lower"), e, bound)
    })
}

/// One line of an inequality sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityRow {
    pub state_id: String,
    pub alpha: f64,
    pub measure: Measure,
    pub check: InequalityCheck,
    /// Informational rows document known gaps and never fail a run.
    pub mandatory: bool,
}

impl InequalityRow {
    pub const HEADER: &'static str = "state_id,alpha,measure,check,lhs,rhs,residual,pass,mandatory";

    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{:.12e},{:.12e},{:.12e},{},{}",
            self.state_id,
            self.alpha,
            self.measure.as_str(),
            self.check.name,
            self.check.lhs,
            self.check.rhs,
            self.check.residual,
            self.check.pass,
            self.mandatory
        )
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Pure states per local dimension `m ∈ {2, 3, 4}` (`n = m`).
    pub pure_per_dim: usize,
    pub mixed: usize,
    pub roof_samples: usize,
    pub grid_size: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 2024,
            pure_per_dim: 500,
            mixed: 100,
            roof_samples: 200,
            grid_size: crate::hull::MIN_GRID,
        }
    }
}

pub const LN_CASES: [(f64, u32); 3] = [(0.5, 1), (0.6, 2), (0.75, 2)];
pub const GM_ALPHAS: [f64; 3] = [0.5, 1.0, 3.0];
pub const GCONC_ALPHAS: [f64; 2] = [0.5, 3.0];
pub const MIXED_DIMS: [(usize, usize); 3] = [(2, 2), (2, 3), (3, 3)];

fn row(state_id: &str, alpha: f64, measure: Measure, check: InequalityCheck, mandatory: bool) -> InequalityRow {
    InequalityRow {
        state_id: state_id.to_string(),
        alpha,
        measure,
        check,
        mandatory,
    }
}

/// Inequality sweep over the random ensemble plus the Bell-state gap row.
///
/// Pure states use stream `k` of seed `seed ^ m`; mixed state `k` uses stream
/// `k` of seed `seed ^ 0x100` with dimensions cycling through [`MIXED_DIMS`]
/// and rank `1 + k mod (m·n)`.
pub fn inequality_suite(cfg: &SuiteConfig) -> Result<Vec<InequalityRow>> {
    use rayon::prelude::*;

    let bell = SchmidtVector::new(vec![0.5, 0.5])?;
    let mut rows = Vec::new();
    let r = gm_lemma_check(&[(1.0, bell.clone())], 3.0, 2)?;
    rows.push(row("bell", 3.0, Measure::Gm, r.squared, true));
    rows.push(row("bell", 3.0, Measure::Gm, r.definitional, false));

    for m in [2usize, 3, 4] {
        let dims = BipartiteDims::new(m, m)?;
        let per_state: Vec<Vec<InequalityRow>> = (0..cfg.pure_per_dim as u64)
            .into_par_iter()
            .map(|k| -> Result<Vec<InequalityRow>> {
                let psi = random_pure_with(dims, &mut sample_rng(cfg.seed ^ m as u64, k))?;
                let mu = psi.schmidt_vector()?;
                let id = format!("pure-{m}x{m}-{k}");
                let mut out = Vec::new();
                for c in alpha_monotonicity_check(&mu, &[0.5, 1.0, 3.0])?.checks {
                    out.push(row(&id, 0.0, Measure::Eof, c, true));
                }
                for a in GM_ALPHAS {
                    let r = gm_lemma_check(&[(1.0, mu.clone())], a, m)?;
                    out.push(row(&id, a, Measure::Gm, r.squared, true));
                    out.push(row(&id, a, Measure::Gm, r.definitional, false));
                }
                for (a, n) in LN_CASES {
                    out.push(row(&id, a, Measure::Ln, ln_inequality_pure(&mu, a, n)?, true));
                }
                for a in GCONC_ALPHAS {
                    out.push(row(&id, a, Measure::GConc, gconc_inequality_check(&mu, a)?, true));
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;
        rows.extend(per_state.into_iter().flatten());
    }

    let mut needed: Vec<(f64, usize)> = Vec::new();
    for (a, _) in LN_CASES {
        for (m, _) in MIXED_DIMS {
            if !needed.contains(&(a, m)) {
                needed.push((a, m));
            }
        }
    }
    let opts = BoundsOptions {
        grid_size: cfg.grid_size,
        ..Default::default()
    };
    let mut cache = HullCache::new();
    for &(a, m) in &needed {
        cache.get_or_build(crate::HullKind::Convex, a, m, opts.method, opts.grid_size)?;
        cache.get_or_build(crate::HullKind::Concave, a, m, opts.method, opts.grid_size)?;
    }

    let per_state: Vec<Vec<InequalityRow>> = (0..cfg.mixed as u64)
        .into_par_iter()
        .map(|k| -> Result<Vec<InequalityRow>> {
            let (m, n) = MIXED_DIMS[k as usize % MIXED_DIMS.len()];
            let dims = BipartiteDims::new(m, n)?;
            let rank = 1 + k as usize % (m * n);
            let rho = random_density_with(dims, rank, &mut sample_rng(cfg.seed ^ 0x100, k))?;
            let id = format!("mixed-{m}x{n}-r{rank}-{k}");
            let sampler = DecompositionSampler::new(&rho, rank + 2, cfg.seed ^ k)?;
            let dec = sampler.sample(0)?;
            let mut cache = cache.clone();
            let mut out = Vec::new();
            for a in GM_ALPHAS {
                let terms: Vec<(f64, SchmidtVector)> = dec
                    .weights
                    .iter()
                    .zip(&dec.members)
                    .map(|(p, psi)| Ok((*p, psi.schmidt_vector()?)))
                    .collect::<Result<_>>()?;
                let r = gm_lemma_check(&terms, a, m)?;
                out.push(row(&id, a, Measure::Gm, r.squared, true));
                out.push(row(&id, a, Measure::Gm, r.definitional, false));
            }
            for (a, n) in LN_CASES {
                let bounds = evaluate_bounds(&rho, a, &opts, &mut cache)?;
                let avg = dec.average_entropy(a)?;
                let roof = (0..cfg.roof_samples as u64)
                    .map(|i| sampler.sample(i)?.average_entropy(a))
                    .try_fold(f64::INFINITY, |acc, v| v.map(|v| acc.min(v)))?;
                let r = ln_inequality_mixed(&rho, a, n, bounds.e_low, Some(avg), Some(roof))?;
                out.push(row(&id, a, Measure::Ln, r.versus_lower_bound, true));
                if let Some(c) = r.versus_decomposition {
                    out.push(row(&id, a, Measure::Ln, c, false));
                }
                if let Some(c) = r.versus_roof_estimate {
                    out.push(row(&id, a, Measure::Ln, c, false));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    rows.extend(per_state.into_iter().flatten());
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use approx::assert_relative_eq;
    use num_complex::Complex64;
    use proptest::prelude::*;

    use super::*;
    use crate::qstate::CMatrix;
    use crate::states::random_pure;

    fn sv(v: &[f64]) -> SchmidtVector {
        SchmidtVector::new(v.to_vec()).unwrap()
    }

    fn max_entangled(d: usize) -> DensityMatrix {
        let dims = BipartiteDims::new(d, d).unwrap();
        let mut e = CMatrix::zeros(d * d, d * d);
        for i in 0..d {
            for j in 0..d {
                e[(i * d + i, j * d + j)] = Complex64::new(1.0 / d as f64, 0.0);
            }
        }
        DensityMatrix::new(dims, e).unwrap()
    }

    #[test]
    fn pure_measure_examples() {
        let bell = sv(&[0.5, 0.5]);
        assert_relative_eq!(eof_pure(&bell), 1.0, epsilon = 1e-15);
        assert_relative_eq!(gm_pure(&bell), 1.0, epsilon = 1e-15);
        assert_relative_eq!(g_concurrence_pure(&bell), 1.0, epsilon = 1e-15);
        let prod = sv(&[1.0, 0.0]);
        assert_eq!(eof_pure(&prod), 0.0);
        assert_eq!(gm_pure(&prod), 0.0);
        assert_eq!(g_concurrence_pure(&prod), 0.0);
        let u = sv(&[1.0 / 3.0; 3]);
        let log3 = 3f64.log2();
        assert_relative_eq!(eof_pure(&u), log3, epsilon = 1e-15);
        assert_relative_eq!(gm_pure(&u), log3, epsilon = 1e-15);
        assert_relative_eq!(g_concurrence_pure(&u), 1.0, epsilon = 1e-15);
        let all = pure_measures(&bell, &[0.5, 3.0]).unwrap();
        assert_eq!(all.len(), 5);
        assert!(all.iter().all(|v| (v.value - 1.0).abs() < 1e-12));
    }

    #[test]
    fn log_negativity_examples() {
        let dims = BipartiteDims::new(2, 2).unwrap();
        let mut e = CMatrix::zeros(4, 4);
        e[(0, 0)] = Complex64::new(0.5, 0.0);
        e[(3, 3)] = Complex64::new(0.5, 0.0);
        let sep = DensityMatrix::new(dims, e).unwrap();
        assert_eq!(log_negativity(&sep).unwrap(), 0.0);
        assert_relative_eq!(log_negativity(&max_entangled(2)).unwrap(), 1.0, epsilon = 1e-12);
        assert_relative_eq!(
            log_negativity(&max_entangled(3)).unwrap(),
            3f64.log2(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn monotonicity_examples() {
        let r = alpha_monotonicity_check(&sv(&[0.5, 0.5]), &[0.3, 1.0, 5.0]).unwrap();
        assert!(r.pass());
        assert!(r.values.iter().all(|v| (v - 1.0).abs() < 1e-12));
        let r = alpha_monotonicity_check(&sv(&[0.9, 0.1]), &[0.5, 1.0, 3.0]).unwrap();
        assert!(r.pass());
        assert!(r.values[0] > r.values[1] && r.values[1] > r.values[2]);
    }

    #[test]
    fn gm_lemma_examples() {
        let bell = vec![(1.0, sv(&[0.5, 0.5]))];
        let r = gm_lemma_check(&bell, 3.0, 2).unwrap();
        assert_relative_eq!(r.squared.lhs, 1.5, epsilon = 1e-12);
        assert_relative_eq!(r.squared.rhs, 1.0, epsilon = 1e-12);
        assert!(r.squared.pass);
        assert_relative_eq!(r.definitional.lhs, 0.75, epsilon = 1e-12);
        assert!(!r.definitional.pass);

        let r = gm_lemma_check(&bell, 1.0, 2).unwrap();
        assert!(r.squared.pass && r.squared.residual.abs() < 1e-12);

        let r = gm_lemma_check(&bell, 0.5, 2).unwrap();
        assert_relative_eq!(r.squared.rhs, 2.0, epsilon = 1e-12);
        assert_relative_eq!(r.squared.lhs, 2.0, epsilon = 1e-12);
        assert!(r.squared.pass);
        assert!(gm_lemma_check(&bell, 0.0, 2).is_err());
    }

    #[test]
    fn ln_examples() {
        let bell = sv(&[0.5, 0.5]);
        let c = ln_inequality_pure(&bell, 0.5, 1).unwrap();
        assert!(c.pass && c.residual.abs() < 1e-12);
        assert!(ln_inequality_pure(&bell, 0.6, 1).is_err());
        assert!(ln_inequality_pure(&bell, 0.75, 2).is_ok());
        assert!(ln_inequality_pure(&bell, 0.8, 2).is_err());

        // Bell-diagonal ½(Φ⁺ + Φ⁻) is separable, yet its Bell decomposition averages 1.
        let dims = BipartiteDims::new(2, 2).unwrap();
        let mut e = CMatrix::zeros(4, 4);
        e[(0, 0)] = Complex64::new(0.5, 0.0);
        e[(3, 3)] = Complex64::new(0.5, 0.0);
        let rho = DensityMatrix::new(dims, e).unwrap();
        let r = ln_inequality_mixed(&rho, 0.5, 1, 0.0, Some(1.0), Some(0.0)).unwrap();
        assert!(r.versus_lower_bound.pass);
        assert!(!r.versus_decomposition.unwrap().pass);
        assert!(r.versus_roof_estimate.unwrap().pass);

        let w = crate::states::werner(3, -0.5).unwrap();
        let mut cache = HullCache::new();
        let b = evaluate_bounds(&w, 0.5, &BoundsOptions::default(), &mut cache).unwrap();
        let roof = crate::states::convex_roof_upper_estimate(&w, 0.5, None, 500, 3).unwrap();
        let r = ln_inequality_mixed(&w, 0.5, 1, b.e_low, None, Some(roof.value)).unwrap();
        assert!(r.versus_lower_bound.pass, "{r:?}");
        assert!(r.log_negativity > 0.0);
    }

    #[test]
    fn gconc_examples() {
        let c = gconc_inequality_check(&sv(&[0.5, 0.5]), 3.0).unwrap();
        assert!(c.pass && c.residual.abs() < 1e-12);
        let c = gconc_inequality_check(&sv(&[1.0 / 3.0; 3]), 0.5).unwrap();
        assert!(c.pass && c.residual.abs() < 1e-12);
        assert_relative_eq!(c.lhs, 3f64.log2(), epsilon = 1e-12);

        let mu = sv(&[0.7, 0.2, 0.1]);
        let c = gconc_inequality_check(&mu, 3.0).unwrap();
        assert_relative_eq!(c.rhs, -0.352f64.log2() / 2.0, epsilon = 1e-12);
        assert!((c.rhs - 0.75318).abs() < 1e-5);
        assert!((g_concurrence_pure(&mu) - 0.7230).abs() < 1e-4);
        assert!((c.lhs - 2.28673).abs() < 1e-5);
        assert!(c.pass);

        let c = gconc_inequality_check(&sv(&[0.8, 0.2, 0.0]), 3.0).unwrap();
        assert!(c.pass && c.lhs.is_infinite());
        let c = gconc_inequality_check(&sv(&[0.8, 0.2, 0.0]), 0.5).unwrap();
        assert!(c.pass);
        assert!(gconc_inequality_check(&mu, 1.0).is_err());
    }

    #[test]
    fn small_suite_passes() {
        let cfg = SuiteConfig {
            pure_per_dim: 20,
            mixed: 9,
            roof_samples: 20,
            ..Default::default()
        };
        let rows = inequality_suite(&cfg).unwrap();
        let failed: Vec<_> = rows.iter().filter(|r| r.mandatory && !r.check.pass).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(rows
            .iter()
            .any(|r| r.state_id == "bell" && !r.mandatory && !r.check.pass));
        assert_eq!(rows, inequality_suite(&cfg).unwrap());
        assert!(rows[0].csv().split(',').count() == InequalityRow::HEADER.split(',').count());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn pure_inequalities_hold(seed in any::<u64>(), m in 2usize..=4) {
            let mu = random_pure(m, m, seed).unwrap().schmidt_vector().unwrap();
            prop_assert!(alpha_monotonicity_check(&mu, &[0.3, 0.5, 1.0, 2.0, 3.0]).unwrap().pass());
            for a in [0.5, 1.0, 3.0] {
                prop_assert!(gm_lemma_check(&[(1.0, mu.clone())], a, m).unwrap().squared.pass);
            }
            for (a, n) in LN_CASES {
                prop_assert!(ln_inequality_pure(&mu, a, n).unwrap().pass);
            }
            for a in [0.5, 3.0] {
                prop_assert!(gconc_inequality_check(&mu, a).unwrap().pass);
            }
            let g = g_concurrence_pure(&mu);
            prop_assert!((0.0..=1.0 + 1e-12).contains(&g));
        }
    }
}
