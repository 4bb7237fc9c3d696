use std::process::ExitCode;

use clap::{Args, ValueEnum};
use renyi_bounds::curves::{extremal_curve, PatternCurve};
use renyi_bounds::hull::{build_hull, HullFunction};
use renyi_bounds::qstate::max_concurrence;
use renyi_bounds::{CurveMethod, Extremum, HullKind};

use crate::failure::Failure;
use crate::output::{num, opt, Report};
use crate::{CurveOpts, OutOpts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Co,
    Ca,
    Both,
}

#[derive(Args, Debug)]
pub struct HullArgs {
    #[arg(long)]
    pub alpha: f64,
    /// Smaller local dimension.
    #[arg(long)]
    pub m: usize,
    /// Hull whose vertices and chords go into the manifest.
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    pub kind: KindArg,
    /// Number of output rows on `[0, c_max]`.
    #[arg(long, default_value_t = 1001)]
    pub points: usize,
    #[command(flatten)]
    pub curve: CurveOpts,
    #[command(flatten)]
    pub out: OutOpts,
}

pub fn run(a: HullArgs) -> Result<ExitCode, Failure> {
    if a.points < 2 {
        return Err(Failure::Input("--points must be at least 2".into()));
    }
    if a.m < 2 {
        return Err(Failure::Input("--m must be at least 2".into()));
    }
    let method: CurveMethod = a.curve.method.into();
    let co = build_hull(HullKind::Convex, a.alpha, a.m, method, a.curve.grid)?;
    let ca = build_hull(HullKind::Concave, a.alpha, a.m, method, a.curve.grid)?;

    let mut r = Report::new("hull");
    r.config("alpha", a.alpha);
    r.config("m", a.m);
    r.config("kind", format!("{:?}", a.kind).to_lowercase());
    r.config("method", method.as_str());
    r.config("grid", a.curve.grid);
    r.config("points", a.points);

    let patterns: Vec<PatternCurve> = if method == CurveMethod::Paper {
        (1..a.m)
            .flat_map(|n1| (1..=a.m - n1).map(move |n2| (n1, n2)))
            .map(|(n1, n2)| PatternCurve {
                n1,
                n2,
                alpha: a.alpha,
            })
            .collect()
    } else {
        Vec::new()
    };
    let mut header = String::from("c,R_L,R_U,co,ca");
    for p in &patterns {
        header.push(',');
        header.push_str(&p.label());
    }
    r.comment(&format!("columns: {header}"));
    r.line(&header);

    let cmax = max_concurrence(a.m);
    for k in 0..a.points {
        let c = if k + 1 == a.points {
            cmax
        } else {
            cmax * k as f64 / (a.points - 1) as f64
        };
        let rl = extremal_curve(c, a.alpha, a.m, Extremum::Min, method)?.value;
        let ru = extremal_curve(c, a.alpha, a.m, Extremum::Max, method)?.value;
        let mut row = format!(
            "{},{},{},{},{}",
            num(c),
            num(rl),
            num(ru),
            num(co.eval(c)?),
            num(ca.eval(c)?)
        );
        for p in &patterns {
            row.push(',');
            row.push_str(&opt(if c > 0.0 { p.eval(c) } else { None }));
        }
        r.line(&row);
    }

    for (h, show) in [
        (&co, a.kind != KindArg::Ca),
        (&ca, a.kind != KindArg::Co),
    ] {
        if show {
            manifest(&mut r, h);
        }
    }
    r.emit(a.out.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn manifest(r: &mut Report, h: &HullFunction) {
    let kind = h.kind.as_str();
    for (c, v) in h.breakpoints() {
        r.comment(&format!("vertex kind={kind} c={} value={}", num(c), num(v)));
    }
    for ch in h.chords() {
        r.comment(&format!(
            "chord kind={kind} c0={} v0={} c1={} v1={} slope_bits={} slope_nats={}",
            num(ch.c0),
            num(ch.v0),
            num(ch.c1),
            num(ch.v1),
            num(ch.slope_bits),
            num(ch.slope_nats)
        ));
    }
}
