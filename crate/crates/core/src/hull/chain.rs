//! Monotone-chain hull of points sorted by `x`.

/// Turns whose sine is at or below this count as collinear, so exactly
/// linear stretches collapse to a single chord despite rounding in the
/// sampled values. Curved stretches sampled at step `h` turn by `O(f''·h)`.
const COLLINEAR: f64 = 1e-12;

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Indices of the lower (`lower = true`) or upper hull vertices, in order.
/// Always contains the first and last index.
pub fn monotone_chain(pts: &[(f64, f64)], lower: bool) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::with_capacity(pts.len());
    for (i, &p) in pts.iter().enumerate() {
        while hull.len() >= 2 {
            let o = pts[hull[hull.len() - 2]];
            let a = pts[hull[hull.len() - 1]];
            let tol = COLLINEAR * (a.0 - o.0).hypot(a.1 - o.1) * (p.0 - o.0).hypot(p.1 - o.1);
            let x = cross(o, a, p);
            let pop = if lower { x <= tol } else { x >= -tol };
            if !pop {
                break;
            }
            hull.pop();
        }
        hull.push(i);
    }
    hull
}
