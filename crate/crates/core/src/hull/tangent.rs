//! Tangent lines from a fixed point to a curve.

use super::Curve;
use crate::{Error, Result};

/// Which side of the curve the tangent line must stay on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Support {
    Below,
    Above,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tangency {
    /// Slope in bits per unit concurrence.
    pub slope: f64,
    pub c: f64,
    pub value: f64,
}

const SCAN: usize = 32;
/// `|g|` at or below this is treated as exactly zero. Numerical slopes carry
/// errors near `1e-10`, so a curve containing the tangent line lands here.
const G_ZERO: f64 = 1e-9;
const SLOPE_TOL: f64 = 1e-6;

fn class(g: f64) -> i8 {
    if g.abs() <= G_ZERO {
        0
    } else if g > 0.0 {
        1
    } else {
        -1
    }
}

/// Solves `g(c) = f'(c)(c − c₀) − (f(c) − v₀) = 0` on `bracket`.
///
/// Every sign transition (including into or out of an exactly-zero stretch,
/// which appears when the curve already contains the tangent line) is
/// bisected. Among the roots the one with the extremal secant slope is
/// returned: for `Below` the largest slope when the anchor lies to the right,
/// the smallest when it lies to the left; `Above` is the reverse.
pub fn tangent_from_point(
    curve: &dyn Curve,
    anchor: (f64, f64),
    bracket: (f64, f64),
    support: Support,
) -> Result<Tangency> {
    let (c0, v0) = anchor;
    let (lo, hi) = bracket;
    let g = |c: f64| -> Result<f64> { Ok(curve.slope(c)? * (c - c0) - (curve.value(c)? - v0)) };
    let xs: Vec<f64> = (0..=SCAN)
        .map(|k| lo + (hi - lo) * k as f64 / SCAN as f64)
        .collect();
    let cls: Vec<i8> = xs
        .iter()
        .map(|&x| g(x).map(class))
        .collect::<Result<_>>()?;
    if cls.iter().all(|&k| k == 0) {
        return Err(Error::DegenerateTangency { lo, hi });
    }
    let mut roots = Vec::new();
    for k in 0..SCAN {
        if cls[k] == cls[k + 1] {
            continue;
        }
        let (mut a, mut b) = (xs[k], xs[k + 1]);
        let ca = cls[k];
        for _ in 0..200 {
            if b - a <= 1e-15 * b.abs().max(1.0) {
                break;
            }
            let mid = 0.5 * (a + b);
            if class(g(mid)?) == ca {
                a = mid;
            } else {
                b = mid;
            }
        }
        // Prefer the endpoint that sits in the zero class, if any.
        let root = if ca == 0 {
            a
        } else if cls[k + 1] == 0 {
            b
        } else {
            0.5 * (a + b)
        };
        roots.push(root);
    }
    let anchor_right = c0 > 0.5 * (lo + hi);
    let want_max = matches!(
        (support, anchor_right),
        (Support::Below, true) | (Support::Above, false)
    );
    let mut best: Option<Tangency> = None;
    for c in roots {
        if c == c0 {
            continue;
        }
        let value = curve.value(c)?;
        let slope = (value - v0) / (c - c0);
        if (curve.slope(c)? - slope).abs() >= SLOPE_TOL {
            continue;
        }
        let better = match best {
            None => true,
            Some(b) if want_max => slope > b.slope,
            Some(b) => slope < b.slope,
        };
        if better {
            best = Some(Tangency { slope, c, value });
        }
    }
    best.ok_or(Error::NoTangency { lo, hi })
}
