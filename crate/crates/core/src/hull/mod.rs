//! Convex hull `co[R_L]` and concave hull `ca[R_U]` on `[0, c_max]`, and the
//! entropy bounds `co[R_L](C̲) ≤ E_α(ρ) ≤ ca[R_U](C̄)`.
//!
//! A hull is built by sampling the curve on a uniform grid (with segment
//! anchors `c_d` inserted), taking the monotone-chain hull, and turning runs
//! of consecutive hull vertices into analytic pieces and gaps into chords.
//! Chord ends that meet an analytic piece are then moved onto the exact
//! tangency point.
//!
//! With `CurveMethod::Paper` each segment `[c_{d−1}, c_d]` is hulled on its
//! own branch and the pieces are concatenated; at a shared `c_d` the left
//! piece wins. With `CurveMethod::Enumeration` the hull is global.

mod chain;
mod tangent;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::concurrence::{concurrence_bracket, ConcurrenceBracket};
use crate::curves::{
    check_branch_alpha, branch_value, CurveMethod, ExtremalCurve, Extremum,
};
use crate::qstate::{max_concurrence, BipartiteDims, DensityMatrix, Tolerances};
use crate::{Error, Result};

pub use chain::monotone_chain;
pub use tangent::{tangent_from_point, Support, Tangency};

/// Step for numerical derivatives.
pub const SLOPE_STEP: f64 = 1e-6;
pub const DEFAULT_GRID: usize = 10_000;
pub const MIN_GRID: usize = 1_000;

/// A real function on a closed interval.
pub trait Curve: Send + Sync {
    fn domain(&self) -> (f64, f64);

    fn value(&self, c: f64) -> Result<f64>;

    /// Central difference, one-sided within a step of the domain ends.
    fn slope(&self, c: f64) -> Result<f64> {
        let (lo, hi) = self.domain();
        let h = SLOPE_STEP;
        if c - h < lo {
            Ok((self.value(c + h)? - self.value(c)?) / h)
        } else if c + h > hi {
            Ok((self.value(c)? - self.value(c - h)?) / h)
        } else {
            Ok((self.value(c + h)? - self.value(c - h)?) / (2.0 * h))
        }
    }
}

impl Curve for ExtremalCurve {
    fn domain(&self) -> (f64, f64) {
        (0.0, self.c_max())
    }

    fn value(&self, c: f64) -> Result<f64> {
        self.eval(c)
    }
}

/// One closed-form branch on its own segment `[c_{d−1}, c_d]`.
#[derive(Debug, Clone, Copy)]
struct BranchCurve {
    d: usize,
    alpha: f64,
    mode: Extremum,
}

impl Curve for BranchCurve {
    fn domain(&self) -> (f64, f64) {
        (max_concurrence(self.d - 1), max_concurrence(self.d))
    }

    fn value(&self, c: f64) -> Result<f64> {
        Ok(branch_value(self.d, c, self.alpha, self.mode))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum HullKind {
    /// Largest convex minorant of `R_L`.
    Convex,
    /// Smallest concave majorant of `R_U`.
    Concave,
}

impl HullKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            HullKind::Convex => "co",
            HullKind::Concave => "ca",
        }
    }

    pub fn mode(&self) -> Extremum {
        match self {
            HullKind::Convex => Extremum::Min,
            HullKind::Concave => Extremum::Max,
        }
    }

    pub fn support(&self) -> Support {
        match self {
            HullKind::Convex => Support::Below,
            HullKind::Concave => Support::Above,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    /// The hull follows the underlying curve.
    Analytic,
    /// Straight line between the piece ends.
    Chord,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Piece {
    pub c0: f64,
    pub v0: f64,
    pub c1: f64,
    pub v1: f64,
    pub kind: PieceKind,
    #[serde(skip)]
    source: usize,
}

impl Piece {
    pub fn slope(&self) -> f64 {
        (self.v1 - self.v0) / (self.c1 - self.c0)
    }
}

/// A chord of the hull with its slope in bits and in nats per unit `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChordInfo {
    pub c0: f64,
    pub v0: f64,
    pub c1: f64,
    pub v1: f64,
    pub slope_bits: f64,
    pub slope_nats: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HullMeta {
    pub alpha: f64,
    pub m: usize,
    pub method: CurveMethod,
    pub grid_size: usize,
}

/// Piecewise hull: analytic pieces delegate to the source curve, chords are
/// linear. Evaluation at a shared piece end uses the left piece.
#[derive(Clone)]
pub struct HullFunction {
    pub kind: HullKind,
    pub meta: Option<HullMeta>,
    pieces: Vec<Piece>,
    sources: Vec<Arc<dyn Curve>>,
}

impl fmt::Debug for HullFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HullFunction")
            .field("kind", &self.kind)
            .field("meta", &self.meta)
            .field("pieces", &self.pieces)
            .finish()
    }
}

impl HullFunction {
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn chords(&self) -> Vec<ChordInfo> {
        self.pieces
            .iter()
            .filter(|p| p.kind == PieceKind::Chord)
            .map(|p| ChordInfo {
                c0: p.c0,
                v0: p.v0,
                c1: p.c1,
                v1: p.v1,
                slope_bits: p.slope(),
                slope_nats: p.slope() * std::f64::consts::LN_2,
            })
            .collect()
    }

    /// Piece ends, in order. A jump between pieces contributes both values.
    pub fn breakpoints(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(self.pieces.len() + 1);
        for p in &self.pieces {
            if out.last() != Some(&(p.c0, p.v0)) {
                out.push((p.c0, p.v0));
            }
            out.push((p.c1, p.v1));
        }
        out
    }

    fn piece_at(&self, c: f64) -> Result<&Piece> {
        let (lo, hi) = self.domain();
        if !(lo..=hi).contains(&c) {
            return Err(Error::OutOfRange {
                name: "c",
                value: c,
                lo,
                hi,
            });
        }
        let k = self.pieces.partition_point(|p| p.c1 < c);
        Ok(&self.pieces[k.min(self.pieces.len() - 1)])
    }

    pub fn eval(&self, c: f64) -> Result<f64> {
        let p = self.piece_at(c)?;
        match p.kind {
            PieceKind::Chord => Ok(p.v0 + p.slope() * (c - p.c0)),
            PieceKind::Analytic => self.sources[p.source].value(c),
        }
    }
}

impl Curve for HullFunction {
    fn domain(&self) -> (f64, f64) {
        (
            self.pieces[0].c0,
            self.pieces[self.pieces.len() - 1].c1,
        )
    }

    fn value(&self, c: f64) -> Result<f64> {
        self.eval(c)
    }

    /// Exact on chords; the source curve's slope on analytic pieces.
    fn slope(&self, c: f64) -> Result<f64> {
        let p = self.piece_at(c)?;
        match p.kind {
            PieceKind::Chord => Ok(p.slope()),
            PieceKind::Analytic => self.sources[p.source].slope(c),
        }
    }
}

/// Hull of `curve` over its domain, sampled with spacing about `step`.
/// `anchors` are interior points kept exactly on the grid and never moved
/// by refinement.
pub fn hull_of_curve(
    curve: Arc<dyn Curve>,
    kind: HullKind,
    step: f64,
    anchors: &[f64],
) -> Result<HullFunction> {
    let (lo, hi) = curve.domain();
    if !(step > 0.0) || !(hi > lo) {
        return Err(Error::OutOfRange {
            name: "step",
            value: step,
            lo: 0.0,
            hi: hi - lo,
        });
    }
    let n = ((hi - lo) / step).ceil().max(1.0) as usize;
    let h = (hi - lo) / n as f64;
    let mut specials = vec![lo, hi];
    specials.extend(anchors.iter().copied().filter(|&a| a > lo && a < hi));
    specials.sort_by(f64::total_cmp);
    specials.dedup();
    for w in specials.windows(2) {
        if w[1] - w[0] < 3.0 * h {
            return Err(Error::Refinement {
                c: w[0],
                reason: "breakpoint separation below three grid steps",
            });
        }
    }
    let mut xs: Vec<f64> = (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect();
    xs[n] = hi;
    for &a in &specials[1..specials.len() - 1] {
        let k = ((a - lo) / h).round() as usize;
        xs[k.clamp(1, n - 1)] = a;
    }
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| Ok((x, curve.value(x)?)))
        .collect::<Result<_>>()?;
    let idx = monotone_chain(&pts, kind == HullKind::Convex);

    // Raw pieces. Gaps of at most two grid steps between analytic runs are
    // sub-grid features and stay analytic.
    let mut raw: Vec<(usize, usize, PieceKind)> = Vec::new();
    for w in idx.windows(2) {
        let k = if w[1] == w[0] + 1 {
            PieceKind::Analytic
        } else {
            PieceKind::Chord
        };
        raw.push((w[0], w[1], k));
    }
    for j in 0..raw.len() {
        let (a, b, k) = raw[j];
        let analytic_left = j > 0 && raw[j - 1].2 == PieceKind::Analytic;
        let analytic_right = j + 1 < raw.len() && raw[j + 1].2 == PieceKind::Analytic;
        if k == PieceKind::Chord && b - a <= 2 && analytic_left && analytic_right {
            raw[j].2 = PieceKind::Analytic;
        }
    }
    let mut pieces: Vec<Piece> = Vec::new();
    for (a, b, kind) in raw {
        if let Some(last) = pieces.last_mut() {
            if last.kind == PieceKind::Analytic && kind == PieceKind::Analytic {
                last.c1 = pts[b].0;
                last.v1 = pts[b].1;
                continue;
            }
        }
        pieces.push(Piece {
            c0: pts[a].0,
            v0: pts[a].1,
            c1: pts[b].0,
            v1: pts[b].1,
            kind,
            source: 0,
        });
    }
    refine_chords(curve.as_ref(), kind, h, &specials, &mut pieces);
    Ok(HullFunction {
        kind,
        meta: None,
        pieces,
        sources: vec![curve],
    })
}

/// Moves free chord ends onto the tangency points; a chord whose
/// refinement fails keeps its grid ends.
fn refine_chords(curve: &dyn Curve, kind: HullKind, h: f64, specials: &[f64], pieces: &mut [Piece]) {
    let support = kind.support();
    let pinned = |c: f64| specials.contains(&c);
    for j in 0..pieces.len() {
        if pieces[j].kind != PieceKind::Chord {
            continue;
        }
        let left_free = j > 0 && pieces[j - 1].kind == PieceKind::Analytic && !pinned(pieces[j].c0);
        let right_free = j + 1 < pieces.len()
            && pieces[j + 1].kind == PieceKind::Analytic
            && !pinned(pieces[j].c1);
        if !left_free && !right_free {
            continue;
        }
        let left_lim = if left_free { pieces[j - 1].c0 } else { pieces[j].c0 };
        let right_lim = if right_free { pieces[j + 1].c1 } else { pieces[j].c1 };
        let (ga, gb) = (pieces[j].c0, pieces[j].c1);
        let solve = |anchor: (f64, f64), around: f64, lo_lim: f64, hi_lim: f64| -> Option<Tangency> {
            for width in [2.0, 6.0] {
                let lo = (around - width * h).max(lo_lim);
                let hi = (around + width * h).min(hi_lim);
                if hi <= lo {
                    continue;
                }
                if let Ok(t) = tangent_from_point(curve, anchor, (lo, hi), support) {
                    return Some(t);
                }
            }
            None
        };
        let mut a = (pieces[j].c0, pieces[j].v0);
        let mut b = (pieces[j].c1, pieces[j].v1);
        let mut ok = true;
        for _ in 0..50 {
            let prev = (a.0, b.0);
            if right_free {
                match solve(a, gb, a.0 + 0.5 * h, right_lim - 1e-12) {
                    Some(t) => b = (t.c, t.value),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if left_free {
                match solve(b, ga, left_lim + 1e-12, b.0 - 0.5 * h) {
                    Some(t) => a = (t.c, t.value),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if !(left_free && right_free)
                || ((a.0 - prev.0).abs() < 1e-14 && (b.0 - prev.1).abs() < 1e-14)
            {
                break;
            }
        }
        if !ok || !(left_lim < a.0 && a.0 < b.0 && b.0 < right_lim) {
            continue;
        }
        pieces[j].c0 = a.0;
        pieces[j].v0 = a.1;
        pieces[j].c1 = b.0;
        pieces[j].v1 = b.1;
        if left_free {
            pieces[j - 1].c1 = a.0;
            pieces[j - 1].v1 = a.1;
        }
        if right_free {
            pieces[j + 1].c0 = b.0;
            pieces[j + 1].v0 = b.1;
        }
    }
}

fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < MIN_GRID {
        return Err(Error::OutOfRange {
            name: "grid_size",
            value: grid_size as f64,
            lo: MIN_GRID as f64,
            hi: f64::INFINITY,
        });
    }
    Ok(())
}

/// `co[R_L]` or `ca[R_U]` for `(α, m)` sampled with `grid_size` points over
/// `[0, c_max]`.
pub fn build_hull(
    kind: HullKind,
    alpha: f64,
    m: usize,
    method: CurveMethod,
    grid_size: usize,
) -> Result<HullFunction> {
    check_grid(grid_size)?;
    let curve = ExtremalCurve::new(alpha, m, kind.mode(), method)?;
    let cmax = max_concurrence(m);
    let step = cmax / (grid_size - 1) as f64;
    let mut hull = match method {
        CurveMethod::Enumeration => {
            let anchors: Vec<f64> = (2..m).map(max_concurrence).collect();
            hull_of_curve(Arc::new(curve), kind, step, &anchors)?
        }
        CurveMethod::Paper => {
            check_branch_alpha(alpha)?;
            let mut pieces = Vec::new();
            let mut sources: Vec<Arc<dyn Curve>> = Vec::new();
            for d in 2..=m {
                let seg = BranchCurve {
                    d,
                    alpha,
                    mode: kind.mode(),
                };
                let h = hull_of_curve(Arc::new(seg), kind, step, &[])?;
                let offset = sources.len();
                pieces.extend(h.pieces.into_iter().map(|mut p| {
                    p.source += offset;
                    p
                }));
                sources.extend(h.sources);
            }
            HullFunction {
                kind,
                meta: None,
                pieces,
                sources,
            }
        }
    };
    hull.meta = Some(HullMeta {
        alpha,
        m,
        method,
        grid_size,
    });
    Ok(hull)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct HullKey {
    kind: HullKind,
    alpha: i64,
    m: usize,
    method: CurveMethod,
    grid_size: usize,
}

fn quantize_alpha(alpha: f64) -> i64 {
    if alpha == f64::INFINITY {
        i64::MAX
    } else {
        (alpha / 1e-12).round() as i64
    }
}

/// Memo of built hulls keyed by `(kind, α to 1e−12, m, method, grid_size)`.
/// Callers own it and pass it by `&mut`. Clones share the built hulls, so a
/// warmed cache can be cloned into parallel workers.
#[derive(Debug, Default, Clone)]
pub struct HullCache {
    map: HashMap<HullKey, Arc<HullFunction>>,
}

impl HullCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get_or_build(
        &mut self,
        kind: HullKind,
        alpha: f64,
        m: usize,
        method: CurveMethod,
        grid_size: usize,
    ) -> Result<Arc<HullFunction>> {
        let key = HullKey {
            kind,
            alpha: quantize_alpha(alpha),
            m,
            method,
            grid_size,
        };
        if let Some(h) = self.map.get(&key) {
            return Ok(Arc::clone(h));
        }
        let h = Arc::new(build_hull(kind, alpha, m, method, grid_size)?);
        self.map.insert(key, Arc::clone(&h));
        Ok(h)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsOptions {
    pub method: CurveMethod,
    pub grid_size: usize,
    pub tolerances: Tolerances,
}

impl Default for BoundsOptions {
    fn default() -> Self {
        Self {
            method: CurveMethod::Enumeration,
            grid_size: DEFAULT_GRID,
            tolerances: Tolerances::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundsReport {
    pub alpha: f64,
    pub dims: BipartiteDims,
    pub bracket: ConcurrenceBracket,
    pub e_low: f64,
    pub e_up: f64,
    pub method: CurveMethod,
    pub grid_size: usize,
}

/// `(co[R_L](c_low), ca[R_U](c_up))`, clamped to `[0, log m]`.
pub fn bounds_from_concurrence(
    c_low: f64,
    c_up: f64,
    alpha: f64,
    m: usize,
    method: CurveMethod,
    grid_size: usize,
    cache: &mut HullCache,
) -> Result<(f64, f64)> {
    let cmax = max_concurrence(m);
    let slack = 1e-9;
    if !(c_low >= 0.0 && c_low <= c_up + slack && c_up <= cmax + slack) {
        return Err(Error::OutOfRange {
            name: "concurrence bracket",
            value: if c_low < 0.0 || c_low > c_up { c_low } else { c_up },
            lo: 0.0,
            hi: cmax,
        });
    }
    let co = cache.get_or_build(HullKind::Convex, alpha, m, method, grid_size)?;
    let ca = cache.get_or_build(HullKind::Concave, alpha, m, method, grid_size)?;
    let logm = (m as f64).log2();
    let e_low = co.eval(c_low.min(cmax))?.clamp(0.0, logm);
    let e_up = ca.eval(c_up.min(cmax))?.clamp(0.0, logm);
    Ok((e_low, e_up))
}

/// Validates `ρ`, brackets its concurrence and evaluates both hulls.
pub fn evaluate_bounds(
    rho: &DensityMatrix,
    alpha: f64,
    opts: &BoundsOptions,
    cache: &mut HullCache,
) -> Result<BoundsReport> {
    let dims = rho.dims();
    if dims.m() < 2 {
        return Err(Error::InvalidDims {
            m: dims.m(),
            n: dims.n(),
            reason: "bounds need m >= 2",
        });
    }
    let violations = rho.validate()?.violations(&opts.tolerances);
    if !violations.is_empty() {
        return Err(Error::InvalidState(violations.join("; ")));
    }
    let bracket = concurrence_bracket(rho)?;
    let cmax = dims.max_concurrence();
    let (e_low, e_up) = bounds_from_concurrence(
        bracket.lower.min(cmax),
        bracket.upper.min(cmax),
        alpha,
        dims.m(),
        opts.method,
        opts.grid_size,
        cache,
    )?;
    Ok(BoundsReport {
        alpha,
        dims,
        bracket,
        e_low,
        e_up,
        method: opts.method,
        grid_size: opts.grid_size,
    })
}
