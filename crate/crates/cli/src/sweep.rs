use std::process::ExitCode;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use renyi_bounds::concurrence::concurrence_bracket;
use renyi_bounds::hull::{bounds_from_concurrence, evaluate_bounds, BoundsOptions, HullCache};
use renyi_bounds::qstate::renyi_unchecked;
use renyi_bounds::states::{example2_rounded, example2_state, werner, werner_concurrence};
use renyi_bounds::{CurveMethod, HullKind};

use crate::failure::Failure;
use crate::output::{num, Report};
use crate::{CurveOpts, OutOpts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    Werner,
    Example2,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub family: SweepFamily,
    #[arg(long)]
    pub alpha: f64,
    /// `lo:hi:count` or a comma-separated list. Defaults to `-1:0:21` for
    /// werner (f) and `0:1:50` for example2 (a).
    #[arg(long, allow_hyphen_values = true)]
    pub param_grid: Option<String>,
    /// Werner local dimension.
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    /// Example-2 noise weight.
    #[arg(long, default_value_t = 0.1)]
    pub x: f64,
    #[command(flatten)]
    pub curve: CurveOpts,
    #[command(flatten)]
    pub out: OutOpts,
}

pub fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let bad = || Failure::Input(format!("bad --param-grid '{s}'"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() == 3 {
        let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        return match n {
            0 => Err(bad()),
            1 => Ok(vec![lo]),
            _ => Ok((0..n)
                .map(|k| {
                    if k + 1 == n {
                        hi
                    } else {
                        lo + (hi - lo) * k as f64 / (n - 1) as f64
                    }
                })
                .collect()),
        };
    }
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| bad()))
        .collect()
}

/// `(1/(1−α)) log[γ^α + (1−γ)^α]` with `γ = (1 + √(1−f²))/2`.
pub fn werner_closed_lower(f: f64, alpha: f64) -> f64 {
    let g = (1.0 + (1.0 - f * f).max(0.0).sqrt()) / 2.0;
    renyi_unchecked(&[g, 1.0 - g], alpha)
}

pub fn run(a: SweepArgs) -> Result<ExitCode, Failure> {
    let method: CurveMethod = a.curve.method.into();
    let (default_grid, m) = match a.family {
        SweepFamily::Werner => ("-1:0:21", a.d),
        SweepFamily::Example2 => ("0:1:50", 3),
    };
    let grid_spec = a.param_grid.clone().unwrap_or_else(|| default_grid.to_string());
    let params = parse_grid(&grid_spec)?;

    let mut cache = HullCache::new();
    cache.get_or_build(HullKind::Convex, a.alpha, m, method, a.curve.grid)?;
    cache.get_or_build(HullKind::Concave, a.alpha, m, method, a.curve.grid)?;
    let opts = BoundsOptions {
        method,
        grid_size: a.curve.grid,
        ..Default::default()
    };

    let mut r = Report::new("sweep");
    r.config("family", format!("{:?}", a.family).to_lowercase());
    r.config("alpha", a.alpha);
    r.config("param_grid", &grid_spec);
    r.config("method", method.as_str());
    r.config("grid", a.curve.grid);

    let rows: Vec<String> = match a.family {
        SweepFamily::Werner => {
            r.config("d", a.d);
            r.comment("e_low_closed is the two-level closed form in c = -f (empty for f > 0)");
            let header = "f,c_exact,e_low,e_up,e_low_closed,c_low_matrix,c_up_matrix,e_low_matrix,e_up_matrix";
            r.comment(&format!("columns: {header}"));
            r.line(header);
            params
                .par_iter()
                .map(|&f| -> Result<String, Failure> {
                    let mut cache = cache.clone();
                    let rho = werner(a.d, f)?;
                    let c = werner_concurrence(f);
                    let (lo, up) =
                        bounds_from_concurrence(c, c, a.alpha, m, method, a.curve.grid, &mut cache)?;
                    let closed = if f <= 0.0 {
                        num(werner_closed_lower(f, a.alpha))
                    } else {
                        String::new()
                    };
                    let b = evaluate_bounds(&rho, a.alpha, &opts, &mut cache)?;
                    Ok(format!(
                        "{},{},{},{},{},{},{},{},{}",
                        num(f),
                        num(c),
                        num(lo),
                        num(up),
                        closed,
                        num(b.bracket.lower),
                        num(b.bracket.upper),
                        num(b.e_low),
                        num(b.e_up)
                    ))
                })
                .collect::<Result<_, _>>()?
        }
        SweepFamily::Example2 => {
            r.config("x", a.x);
            r.comment("c1 purity term, c2 partial-transpose term, c3 realignment term, c_up purity upper bound");
            r.comment("*_rounded are the closed forms with rounded coefficients, valid for x = 0.1 only");
            r.comment("e_low is co[R_L] at max(c1, c2, c3); e_low_cK uses cK alone");
            let header = "a,c1,c2,c3,c_up,c1_rounded,c2_rounded,c3_rounded,c_up_rounded,e_low_c1,e_low_c2,e_low_c3,e_low,e_up";
            r.comment(&format!("columns: {header}"));
            r.line(header);
            let rounded = (a.x - 0.1).abs() < 1e-12;
            params
                .par_iter()
                .map(|&p| -> Result<String, Failure> {
                    let mut cache = cache.clone();
                    let rho = example2_state(p, a.x)?;
                    let b = concurrence_bracket(&rho)?;
                    let c1 = b.terms.purity_a.max(b.terms.purity_b);
                    let cs = [c1, b.terms.ppt, b.terms.ccnr];
                    let mut e = Vec::new();
                    for c in cs {
                        e.push(
                            bounds_from_concurrence(c, c, a.alpha, 3, method, a.curve.grid, &mut cache)?
                                .0,
                        );
                    }
                    let (lo, up) = bounds_from_concurrence(
                        b.lower,
                        b.upper,
                        a.alpha,
                        3,
                        method,
                        a.curve.grid,
                        &mut cache,
                    )?;
                    let rc = example2_rounded(p);
                    let rcol = |v: f64| if rounded { num(v) } else { String::new() };
                    Ok(format!(
                        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                        num(p),
                        num(cs[0]),
                        num(cs[1]),
                        num(cs[2]),
                        num(b.upper),
                        rcol(rc.c1),
                        rcol(rc.c2),
                        rcol(rc.c3),
                        rcol(rc.c_upper),
                        num(e[0]),
                        num(e[1]),
                        num(e[2]),
                        num(lo),
                        num(up)
                    ))
                })
                .collect::<Result<_, _>>()?
        }
    };
    for row in rows {
        r.line(&row);
    }
    r.emit(a.out.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_forms() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("-1,-0.5").unwrap(), vec![-1.0, -0.5]);
        assert_eq!(parse_grid("0.2:0.9:1").unwrap(), vec![0.2]);
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("a,b").is_err());
    }

    #[test]
    fn closed_lower_at_half() {
        assert!((werner_closed_lower(-0.5, 3.0) - 0.149780140929454).abs() < 1e-12);
        assert_eq!(werner_closed_lower(0.0, 3.0), 0.0);
    }
}
