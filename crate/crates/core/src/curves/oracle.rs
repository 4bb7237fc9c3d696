//! Brute-force extremization of `H_α` over `{μ ≥ 0, Σμ = 1, Σμ² = s}`
//! for `m ≤ 4`, sharing nothing with the stationary-pattern code.
//!
//! `m = 3`: the slice is a circle about the barycenter, swept by angle.
//! `m = 4`: one coordinate `t` is swept and the rest is the scaled `m = 3`
//! problem at `s' = (s − t²)/(1 − t)²`.

use std::f64::consts::PI;

use super::Extremum;
use crate::qstate::max_concurrence;
use crate::{Error, Result};

const ANGLE_SAMPLES: usize = 100_000;
const INNER_SAMPLES: usize = 1_500;
const OUTER_SAMPLES: usize = 600;
const ZERO: f64 = 1e-12;

/// A quantity monotone in `H_α` that composes over `(t, (1−t)ν)`.
#[derive(Debug, Clone, Copy)]
enum Score {
    Power(f64),
    Shannon,
    Hartley,
    MaxEntry,
}

impl Score {
    fn new(alpha: f64) -> Self {
        if alpha == f64::INFINITY {
            Score::MaxEntry
        } else if alpha == 0.0 {
            Score::Hartley
        } else if (alpha - 1.0).abs() < 1e-6 {
            Score::Shannon
        } else {
            Score::Power(alpha)
        }
    }

    fn of(self, p: &[f64]) -> f64 {
        match self {
            Score::Power(a) => p.iter().filter(|&&x| x > 0.0).map(|x| x.powf(a)).sum(),
            Score::Shannon => -p.iter().filter(|&&x| x > 0.0).map(|x| x * x.ln()).sum::<f64>() / 2f64.ln(),
            Score::Hartley => p.iter().filter(|&&x| x > ZERO).count() as f64,
            Score::MaxEntry => p.iter().copied().fold(0.0, f64::max),
        }
    }

    fn combine(self, t: f64, inner: f64) -> f64 {
        let u = 1.0 - t;
        match self {
            Score::Power(a) => t.powf(a) + u.powf(a) * inner,
            Score::Shannon => self.of(&[t, u]) + u * inner,
            Score::Hartley => (t > ZERO) as u8 as f64 + inner,
            Score::MaxEntry => t.max(u * inner),
        }
    }

    fn entropy(self, score: f64) -> f64 {
        let h = match self {
            Score::Power(a) => score.ln() / 2f64.ln() / (1.0 - a),
            Score::Shannon => score,
            Score::Hartley => score.ln() / 2f64.ln(),
            Score::MaxEntry => -score.ln() / 2f64.ln(),
        };
        h.max(0.0)
    }

    fn increasing(self) -> bool {
        match self {
            Score::Power(a) => a < 1.0,
            Score::Shannon | Score::Hartley => true,
            Score::MaxEntry => false,
        }
    }
}

/// Extremal `H_α` over Schmidt vectors of length `m ≤ 4` with concurrence `c`.
pub fn simplex_oracle(c: f64, alpha: f64, m: usize, mode: Extremum) -> Result<f64> {
    if !(2..=4).contains(&m) {
        return Err(Error::InvalidDims {
            m,
            n: m,
            reason: "oracle supports 2 <= m <= 4",
        });
    }
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let cmax = max_concurrence(m);
    if !(0.0..=cmax + 1e-12).contains(&c) {
        return Err(Error::OutOfRange {
            name: "c",
            value: c,
            lo: 0.0,
            hi: cmax,
        });
    }
    if c == 0.0 {
        return Ok(0.0);
    }
    let s = (1.0 - c * c / 2.0).max(1.0 / m as f64);
    let score = Score::new(alpha);
    // Minimize sign·score.
    let sign = match (mode, score.increasing()) {
        (Extremum::Min, true) | (Extremum::Max, false) => 1.0,
        _ => -1.0,
    };
    let best = match m {
        2 => {
            let a = (1.0 + (2.0 * s - 1.0).max(0.0).sqrt()) / 2.0;
            sign * score.of(&[a, 1.0 - a])
        }
        3 => circle_min(s, score, sign, ANGLE_SAMPLES),
        _ => nested_min(s, score, sign),
    };
    Ok(score.entropy(sign * best))
}

/// Minimum of `sign·score` on the `m = 3` slice, or `+∞` if it is empty.
fn circle_min(s: f64, score: Score, sign: f64, samples: usize) -> f64 {
    let third = 1.0 / 3.0;
    let r2 = s - third;
    if r2 < -1e-12 {
        return f64::INFINITY;
    }
    let r = r2.max(0.0).sqrt();
    if r < 1e-14 {
        return sign * score.of(&[third; 3]);
    }
    let e1 = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
    let e2 = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
    let point = |th: f64| -> Option<[f64; 3]> {
        let (sn, cs) = th.sin_cos();
        let mut p = [0.0; 3];
        for i in 0..3 {
            p[i] = third + r * (e1[i] * cs + e2[i] * sn);
            if p[i] < -1e-10 {
                return None;
            }
            p[i] = p[i].max(0.0);
        }
        Some(p)
    };
    let eval = |th: f64| point(th).map(|p| sign * score.of(&p));
    // μ_i = 1/3 + r·R·cos(θ − φ_i) with R = √(2/3); μ_i = 0 on the arc ends.
    let x = -1.0 / (3.0 * r * (2.0f64 / 3.0).sqrt());
    if x.abs() > 1.0 {
        let thetas: Vec<f64> = (0..samples)
            .map(|k| 2.0 * PI * k as f64 / samples as f64)
            .collect();
        return search(&thetas, eval, true);
    }
    let w = x.acos();
    let mut ends: Vec<f64> = (0..3)
        .flat_map(|i| {
            let phi = e2[i].atan2(e1[i]);
            [(phi - w).rem_euclid(2.0 * PI), (phi + w).rem_euclid(2.0 * PI)]
        })
        .collect();
    ends.sort_by(f64::total_cmp);
    let mut arcs = Vec::new();
    for k in 0..ends.len() {
        let a = ends[k];
        let b = if k + 1 < ends.len() {
            ends[k + 1]
        } else {
            ends[0] + 2.0 * PI
        };
        if b - a > 0.0 && point(0.5 * (a + b)).is_some() {
            arcs.push((a, b));
        }
    }
    let end_best = ends
        .iter()
        .filter_map(|&th| eval(th))
        .fold(f64::INFINITY, f64::min);
    end_best.min(search_intervals(&arcs, samples, eval))
}

fn nested_min(s: f64, score: Score, sign: f64) -> f64 {
    let hi = s.sqrt().min(1.0 - 1e-12);
    // Feasibility edges: s' = 1/3 and s' = 1.
    let mut cuts = vec![0.0, hi];
    let q = 12.0 * s - 3.0;
    if q >= 0.0 {
        cuts.extend([(1.0 - q.sqrt()) / 4.0, (1.0 + q.sqrt()) / 4.0]);
    }
    let q = 2.0 * s - 1.0;
    if q >= 0.0 {
        cuts.extend([(1.0 - q.sqrt()) / 2.0, (1.0 + q.sqrt()) / 2.0]);
    }
    cuts.retain(|t| (0.0..=hi).contains(t));
    cuts.sort_by(f64::total_cmp);
    let s_prime = |t: f64| {
        let u = 1.0 - t;
        (s - t * t) / (u * u)
    };
    let feasible = |sp: f64| (1.0 / 3.0 - 1e-9..=1.0 + 1e-9).contains(&sp);
    let eval = |t: f64| -> Option<f64> {
        let sp = s_prime(t);
        if !feasible(sp) {
            return None;
        }
        let inner = circle_min(sp.clamp(1.0 / 3.0, 1.0), score, sign, INNER_SAMPLES);
        if !inner.is_finite() {
            return None;
        }
        Some(sign * score.combine(t, sign * inner))
    };
    let intervals: Vec<(f64, f64)> = cuts
        .windows(2)
        .map(|w| (w[0], w[1]))
        .filter(|&(a, b)| b > a && feasible(s_prime(0.5 * (a + b))))
        .collect();
    let edge_best = cuts
        .iter()
        .filter_map(|&t| eval(t))
        .fold(f64::INFINITY, f64::min);
    edge_best.min(search_intervals(&intervals, OUTER_SAMPLES, eval))
}

/// [`search`] over each interval with the sample budget split evenly.
fn search_intervals(
    intervals: &[(f64, f64)],
    samples: usize,
    eval: impl Fn(f64) -> Option<f64>,
) -> f64 {
    let per = (samples / intervals.len().max(1)).max(16);
    intervals
        .iter()
        .map(|&(a, b)| {
            let xs: Vec<f64> = (0..=per)
                .map(|k| a + (b - a) * k as f64 / per as f64)
                .collect();
            search(&xs, &eval, false)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Discrete local minima polished per search; more only arise from flat or
/// noisy objectives where polishing gains nothing.
const MAX_POLISH: usize = 8;

/// Minimum over sorted sample points, polishing the lowest discrete local
/// minima by golden-section search between their neighbours.
fn search(xs: &[f64], eval: impl Fn(f64) -> Option<f64>, periodic: bool) -> f64 {
    let vals: Vec<Option<f64>> = xs.iter().map(|&x| eval(x)).collect();
    let n = xs.len();
    let mut best = vals.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let worst = vals.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max);
    if worst - best <= 1e-13 * best.abs().max(1.0) {
        return best;
    }
    let mut minima = Vec::new();
    for k in 0..n {
        let Some(v) = vals[k] else { continue };
        let (kl, kr) = if periodic {
            ((k + n - 1) % n, (k + 1) % n)
        } else if k == 0 || k + 1 == n {
            continue;
        } else {
            (k - 1, k + 1)
        };
        let (Some(vl), Some(vr)) = (vals[kl], vals[kr]) else {
            continue;
        };
        if v <= vl && v <= vr {
            minima.push((v, kl, kr));
        }
    }
    minima.sort_by(|a, b| a.0.total_cmp(&b.0));
    for &(_, kl, kr) in minima.iter().take(MAX_POLISH) {
        let a = xs[kl];
        let mut b = xs[kr];
        if periodic && b < a {
            b += 2.0 * PI;
        }
        let f = |x: f64| eval(x).unwrap_or(f64::INFINITY);
        best = best.min(golden(a, b, f));
    }
    best
}

fn golden(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let inv = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv * (b - a);
    let mut x2 = a + inv * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    let mut best = f1.min(f2);
    for _ in 0..200 {
        if b - a < 1e-13 {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv * (b - a);
            f2 = f(x2);
        }
        best = best.min(f1).min(f2);
    }
    best
}
