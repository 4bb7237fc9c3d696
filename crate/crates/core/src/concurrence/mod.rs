//! Pure-state concurrence and the mixed-state bracket `C̲ ≤ C(ρ) ≤ C̄`.

pub mod two_copy;

use serde::Serialize;

use crate::qstate::{trace_norm, DensityMatrix, SchmidtVector};
use crate::Result;

pub use two_copy::{two_copy_identity_check, ObservableKind, TwoCopyObservable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerSource {
    Zero,
    Ppt,
    Ccnr,
    PurityA,
    PurityB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UpperSource {
    PurityA,
    PurityB,
}

impl LowerSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            LowerSource::Zero => "zero",
            LowerSource::Ppt => "ppt",
            LowerSource::Ccnr => "ccnr",
            LowerSource::PurityA => "purity_A",
            LowerSource::PurityB => "purity_B",
        }
    }
}

impl UpperSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            UpperSource::PurityA => "purity_A",
            UpperSource::PurityB => "purity_B",
        }
    }
}

/// Individual lower-bound candidates, before taking the maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LowerTerms {
    pub ppt: f64,
    pub ccnr: f64,
    pub purity_a: f64,
    pub purity_b: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcurrenceBracket {
    pub lower: f64,
    pub upper: f64,
    pub lower_source: LowerSource,
    pub upper_source: UpperSource,
    pub terms: LowerTerms,
}

/// `√(2(1 − Σμ²))`
pub fn concurrence_pure(mu: &SchmidtVector) -> f64 {
    (2.0 * (1.0 - mu.purity())).max(0.0).sqrt()
}

fn ppt_ccnr_prefactor(m: usize) -> f64 {
    if m < 2 {
        return 0.0;
    }
    (2.0 / (m * (m - 1)) as f64).sqrt()
}

/// `(‖ρ^{T_A}‖₁, ‖R(ρ)‖₁)`
pub fn ppt_ccnr_norms(rho: &DensityMatrix) -> Result<(f64, f64)> {
    Ok((
        trace_norm(&rho.partial_transpose())?,
        trace_norm(&rho.realign())?,
    ))
}

/// `√(2/(m(m−1))) · max(0, max(‖ρ^{T_A}‖₁, ‖R(ρ)‖₁) − 1)`
pub fn ppt_ccnr_lower(rho: &DensityMatrix) -> Result<f64> {
    let (pt, cc) = ppt_ccnr_norms(rho)?;
    Ok(ppt_ccnr_prefactor(rho.dims().m()) * (pt.max(cc) - 1.0).max(0.0))
}

/// Purity-based `(lower, upper)`; negative radicands are clipped to zero.
pub fn purity_bounds(rho: &DensityMatrix) -> (f64, f64) {
    let t = purity_terms(rho);
    (t.lower_a.max(t.lower_b), t.upper_a.min(t.upper_b))
}

struct PurityTerms {
    lower_a: f64,
    lower_b: f64,
    upper_a: f64,
    upper_b: f64,
}

fn purity_terms(rho: &DensityMatrix) -> PurityTerms {
    let p = rho.purity();
    let (pa, pb) = rho.reduced_purities();
    let root = |x: f64| (2.0 * x).max(0.0).sqrt();
    PurityTerms {
        lower_a: root(p - pa),
        lower_b: root(p - pb),
        upper_a: root(1.0 - pa),
        upper_b: root(1.0 - pb),
    }
}

pub fn concurrence_bracket(rho: &DensityMatrix) -> Result<ConcurrenceBracket> {
    let (pt, cc) = ppt_ccnr_norms(rho)?;
    let pre = ppt_ccnr_prefactor(rho.dims().m());
    let pur = purity_terms(rho);
    let terms = LowerTerms {
        ppt: pre * (pt - 1.0).max(0.0),
        ccnr: pre * (cc - 1.0).max(0.0),
        purity_a: pur.lower_a,
        purity_b: pur.lower_b,
    };
    let mut lower = 0.0;
    let mut lower_source = LowerSource::Zero;
    for (v, src) in [
        (terms.ppt, LowerSource::Ppt),
        (terms.ccnr, LowerSource::Ccnr),
        (terms.purity_a, LowerSource::PurityA),
        (terms.purity_b, LowerSource::PurityB),
    ] {
        if v > lower {
            lower = v;
            lower_source = src;
        }
    }
    let (upper, upper_source) = if pur.upper_b < pur.upper_a {
        (pur.upper_b, UpperSource::PurityB)
    } else {
        (pur.upper_a, UpperSource::PurityA)
    };
    Ok(ConcurrenceBracket {
        lower,
        upper,
        lower_source,
        upper_source,
        terms,
    })
}
