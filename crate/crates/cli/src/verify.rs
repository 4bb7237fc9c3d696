//! Invariant suites behind `verify`. Each check prints one line,
//! `PASS|FAIL|INFO name: detail`; INFO lines never fail the run.

use std::process::ExitCode;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use renyi_bounds::concurrence::{concurrence_pure, two_copy_identity_check};
use renyi_bounds::curves::{branch_value, extremal_curve, simplex_oracle};
use renyi_bounds::hull::{build_hull, evaluate_bounds, BoundsOptions, HullCache, DEFAULT_GRID};
use renyi_bounds::measures::{inequality_suite, SuiteConfig};
use renyi_bounds::qstate::{max_concurrence, renyi_entropy, Tolerances};
use renyi_bounds::states::{
    convex_roof_upper_estimate, example2_state, random_density, random_density_with,
    random_pure_with, sample_rng, werner, DEFAULT_SAMPLES,
};
use renyi_bounds::{
    BipartiteDims, CurveMethod, DensityMatrix, Extremum, HullKind, PureState, Result,
};

use crate::failure::Failure;
use crate::output::Report;
use crate::{OutOpts, TolOpts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Quick,
    Full,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::Quick)]
    pub suite: Suite,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[command(flatten)]
    pub tol: TolOpts,
    #[command(flatten)]
    pub out: OutOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Info,
}

struct Line {
    status: Status,
    name: &'static str,
    detail: String,
}

fn check(name: &'static str, ok: bool, detail: String) -> Line {
    Line {
        status: if ok { Status::Pass } else { Status::Fail },
        name,
        detail,
    }
}

fn info(name: &'static str, detail: String) -> Line {
    Line {
        status: Status::Info,
        name,
        detail,
    }
}

/// Runs `f`, turning an error into a failed line.
fn guard(name: &'static str, f: impl FnOnce() -> Result<Line>) -> Line {
    f().unwrap_or_else(|e| check(name, false, format!("error: {e}")))
}

struct Sizes {
    two_copy: u64,
    alpha2_points: usize,
    oracle_dims: &'static [usize],
    oracle_points: usize,
    pure_states: u64,
    werner_f: &'static [f64],
    example2_a: &'static [f64],
    suite: SuiteConfig,
}

impl Sizes {
    fn new(suite: Suite, seed: u64) -> Self {
        match suite {
            Suite::Quick => Self {
                two_copy: 20,
                alpha2_points: 1_000,
                oracle_dims: &[2, 3],
                oracle_points: 5,
                pure_states: 50,
                werner_f: &[-0.5],
                example2_a: &[0.0],
                suite: SuiteConfig {
                    seed,
                    pure_per_dim: 50,
                    mixed: 12,
                    roof_samples: 50,
                    ..Default::default()
                },
            },
            Suite::Full => Self {
                two_copy: 200,
                alpha2_points: 10_000,
                oracle_dims: &[2, 3, 4],
                oracle_points: 40,
                pure_states: 500,
                werner_f: &[-0.25, -0.5, -0.75],
                example2_a: &[0.0, 0.25, 0.5, 0.75, 1.0],
                suite: SuiteConfig {
                    seed,
                    ..Default::default()
                },
            },
        }
    }
}

pub fn run(a: VerifyArgs) -> std::result::Result<ExitCode, Failure> {
    let tol = a.tol.tolerances()?;
    let sizes = Sizes::new(a.suite, a.seed);
    let mut r = Report::new("verify");
    r.config("suite", format!("{:?}", a.suite).to_lowercase());
    r.config("seed", a.seed);
    r.config("tol_herm", tol.herm);
    r.config("tol_psd", tol.psd);
    r.config("tol_trace", tol.trace);

    let lines = vec![
        guard("factory-states-validate", || validate_factory(a.seed, &tol)),
        guard("two-copy-identities", || two_copy(a.seed, sizes.two_copy)),
        guard("alpha2-coincidence", || alpha2(sizes.alpha2_points)),
        guard("segment-endpoints", segment_endpoints),
        guard("oracle-equivalence", || oracle(sizes.oracle_dims, sizes.oracle_points)),
        guard("tangent-chord", tangent_chord),
        guard("hull-vertices", hull_vertices),
        guard("pure-sandwich", || pure_sandwich(a.seed, sizes.pure_states, &tol)),
        guard("roof-consistency", || roof(a.seed, sizes.werner_f, sizes.example2_a, &tol)),
    ];
    let mut all = lines;
    all.extend(inequalities(&sizes.suite));
    all.push(guard("lower-branch-gap", branch_gap));

    let mut failed = 0;
    for l in &all {
        let tag = match l.status {
            Status::Pass => "PASS",
            Status::Fail => {
                failed += 1;
                "FAIL"
            }
            Status::Info => "INFO",
        };
        r.line(&format!("{tag} {}: {}", l.name, l.detail));
    }
    let passed = all.iter().filter(|l| l.status == Status::Pass).count();
    r.comment(&format!("summary: {passed} passed, {failed} failed"));
    r.emit(a.out.out.as_deref())?;
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn bell() -> Result<PureState> {
    let s = 0.5f64.sqrt();
    let mut v = renyi_bounds::qstate::CVector::zeros(4);
    v[0] = s.into();
    v[3] = s.into();
    PureState::new(BipartiteDims::new(2, 2)?, v)
}

fn validate_factory(seed: u64, tol: &Tolerances) -> Result<Line> {
    let states: Vec<(String, DensityMatrix)> = vec![
        ("werner(3,-1)".into(), werner(3, -1.0)?),
        ("werner(3,1)".into(), werner(3, 1.0)?),
        ("werner(2,0.3)".into(), werner(2, 0.3)?),
        ("example2(0,0.1)".into(), example2_state(0.0, 0.1)?),
        ("example2(0.5,0)".into(), example2_state(0.5, 0.0)?),
        ("random(3x3,rank1)".into(), random_density(3, 3, 1, seed)?),
        ("random(2x3,rank6)".into(), random_density(2, 3, 6, seed)?),
        ("bell".into(), DensityMatrix::from_pure(&bell()?)),
    ];
    let mut bad = Vec::new();
    for (name, rho) in &states {
        let v = rho.validate()?.violations(tol);
        if !v.is_empty() {
            bad.push(format!("{name}: {}", v.join(", ")));
        }
    }
    Ok(check(
        "factory-states-validate",
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} states valid", states.len())
        } else {
            bad.join("; ")
        },
    ))
}

fn two_copy(seed: u64, count: u64) -> Result<Line> {
    let mut worst = 0.0f64;
    for (m, n) in [(2, 2), (2, 3)] {
        let dims = BipartiteDims::new(m, n)?;
        let w = (0..count)
            .into_par_iter()
            .map(|k| -> Result<f64> {
                let rank = 1 + k as usize % (m * n);
                let rho = random_density_with(dims, rank, &mut sample_rng(seed ^ 0x200, k))?;
                Ok(two_copy_identity_check(&rho)?.into_iter().fold(0.0, f64::max))
            })
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        worst = worst.max(w);
    }
    Ok(check(
        "two-copy-identities",
        worst < 1e-10,
        format!("max residual {worst:.3e} over {} states", 2 * count),
    ))
}

fn alpha2(points: usize) -> Result<Line> {
    let cmax = max_concurrence(3);
    let mut gap = 0.0f64;
    let mut formula = 0.0f64;
    for k in 0..points {
        let c = cmax * k as f64 / (points - 1) as f64;
        let rl = extremal_curve(c, 2.0, 3, Extremum::Min, CurveMethod::Enumeration)?.value;
        let ru = extremal_curve(c, 2.0, 3, Extremum::Max, CurveMethod::Enumeration)?.value;
        let f = -(1.0 - c * c / 2.0).log2();
        gap = gap.max((rl - ru).abs());
        formula = formula.max((rl - f).abs()).max((ru - f).abs());
    }
    Ok(check(
        "alpha2-coincidence",
        gap < 1e-9 && formula < 1e-9,
        format!("max |R_L-R_U| {gap:.3e}, max deviation from -log(1-c^2/2) {formula:.3e}, {points} points"),
    ))
}

fn segment_endpoints() -> Result<Line> {
    let mut worst = 0.0f64;
    for m in [3usize, 4] {
        for alpha in [0.6, 3.0] {
            for d in 2..=m {
                let cd = max_concurrence(d);
                for mode in [Extremum::Min, Extremum::Max] {
                    worst = worst.max((branch_value(d, cd, alpha, mode) - (d as f64).log2()).abs());
                }
            }
            for mode in [Extremum::Min, Extremum::Max] {
                let v = extremal_curve(max_concurrence(m), alpha, m, mode, CurveMethod::Enumeration)?.value;
                worst = worst.max((v - (m as f64).log2()).abs());
            }
        }
    }
    Ok(check(
        "segment-endpoints",
        worst < 1e-9,
        format!("max |value - log d| {worst:.3e}"),
    ))
}

fn oracle(dims: &[usize], points: usize) -> Result<Line> {
    let alphas = [0.3, 0.6, 1.0, 2.0, 3.0, 5.0];
    let mut cases = Vec::new();
    for &m in dims {
        let cmax = max_concurrence(m);
        for k in 1..=points {
            let c = cmax * k as f64 / points as f64;
            for alpha in alphas {
                for mode in [Extremum::Min, Extremum::Max] {
                    cases.push((m, c, alpha, mode));
                }
            }
        }
    }
    let worst = cases
        .par_iter()
        .map(|&(m, c, alpha, mode)| -> Result<f64> {
            let e = extremal_curve(c, alpha, m, mode, CurveMethod::Enumeration)?.value;
            Ok((e - simplex_oracle(c, alpha, m, mode)?).abs())
        })
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(check(
        "oracle-equivalence",
        worst < 1e-6,
        format!("max |enumeration - oracle| {worst:.3e} over {} cases", cases.len()),
    ))
}

fn tangent_chord() -> Result<Line> {
    let h = build_hull(HullKind::Convex, 3.0, 3, CurveMethod::Paper, DEFAULT_GRID)?;
    let ch = *h.chords().last().expect("the convex hull ends in a chord");
    Ok(check(
        "tangent-chord",
        (ch.slope_nats - 5.2401).abs() <= 2e-3 && (ch.c0 - 1.1533).abs() <= 2e-3,
        format!(
            "k1 = {:.6} nats ({:.6} bits), c* = {:.6}",
            ch.slope_nats, ch.slope_bits, ch.c0
        ),
    ))
}

fn hull_vertices() -> Result<Line> {
    let targets = [(0.0, 0.0), (1.0, 1.0), (max_concurrence(3), 3f64.log2())];
    let mut missing = Vec::new();
    for (kind, alpha) in [(HullKind::Concave, 3.0), (HullKind::Convex, 0.6)] {
        let bp = build_hull(kind, alpha, 3, CurveMethod::Paper, DEFAULT_GRID)?.breakpoints();
        for t in targets {
            if !bp
                .iter()
                .any(|p| (p.0 - t.0).abs() <= 1e-6 && (p.1 - t.1).abs() <= 1e-6)
            {
                missing.push(format!("{} a={alpha} {t:?}", kind.as_str()));
            }
        }
    }
    Ok(check(
        "hull-vertices",
        missing.is_empty(),
        if missing.is_empty() {
            "ca at alpha=3 and co at alpha=0.6 contain (0,0), (1,1), (2/sqrt3, log 3)".into()
        } else {
            format!("missing {}", missing.join("; "))
        },
    ))
}

fn pure_sandwich(seed: u64, count: u64, tol: &Tolerances) -> Result<Line> {
    let mut cache = HullCache::new();
    for alpha in [0.6, 3.0] {
        for m in [2, 3] {
            cache.get_or_build(HullKind::Convex, alpha, m, CurveMethod::Enumeration, DEFAULT_GRID)?;
            cache.get_or_build(HullKind::Concave, alpha, m, CurveMethod::Enumeration, DEFAULT_GRID)?;
        }
    }
    let opts = BoundsOptions {
        tolerances: *tol,
        ..Default::default()
    };
    let mut cases = Vec::new();
    for alpha in [0.6, 3.0] {
        for m in [2usize, 3] {
            for k in 0..count {
                cases.push((alpha, m, k));
            }
        }
    }
    let results: Vec<Result<(bool, f64)>> = cases
        .par_iter()
        .map(|&(alpha, m, k)| {
            let mut cache = cache.clone();
            let psi = random_pure_with(BipartiteDims::new(m, m)?, &mut sample_rng(seed ^ 0x300 ^ m as u64, k))?;
            let mu = psi.schmidt_vector()?;
            let h = renyi_entropy(&mu, alpha)?;
            let c = concurrence_pure(&mu);
            let b = evaluate_bounds(&DensityMatrix::from_pure(&psi), alpha, &opts, &mut cache)?;
            let ok = b.e_low - 1e-9 <= h && h <= b.e_up + 1e-9;
            let gap = (b.bracket.lower - c).abs().max((b.bracket.upper - c).abs());
            Ok((ok, gap))
        })
        .collect();
    let mut bad = 0;
    let mut errors = Vec::new();
    let mut gap = 0.0f64;
    for res in results {
        match res {
            Ok((ok, g)) => {
                bad += usize::from(!ok);
                gap = gap.max(g);
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let ok = bad == 0 && errors.is_empty() && gap < 1e-9;
    let mut detail = format!(
        "{} states, {bad} outside [e_low, e_up], max bracket gap {gap:.3e}",
        cases.len()
    );
    if !errors.is_empty() {
        detail.push_str(&format!(", {} errors (first: {})", errors.len(), errors[0]));
    }
    Ok(check("pure-sandwich", ok, detail))
}

fn roof(seed: u64, fs: &[f64], as_: &[f64], tol: &Tolerances) -> Result<Line> {
    let mut states: Vec<(String, DensityMatrix)> = Vec::new();
    for &f in fs {
        states.push((format!("werner(3,{f})"), werner(3, f)?));
    }
    for &a in as_ {
        states.push((format!("example2({a},0.1)"), example2_state(a, 0.1)?));
    }
    let opts = BoundsOptions {
        tolerances: *tol,
        ..Default::default()
    };
    let mut cache = HullCache::new();
    let mut parts = Vec::new();
    let mut ok = true;
    for alpha in [0.6, 2.0, 3.0] {
        for (name, rho) in &states {
            let b = evaluate_bounds(rho, alpha, &opts, &mut cache)?;
            let est = convex_roof_upper_estimate(rho, alpha, None, DEFAULT_SAMPLES, seed)?;
            let good = est.value >= b.e_low - 1e-9 && b.e_up >= b.e_low - 1e-9;
            ok &= good;
            if !good || alpha == 3.0 {
                parts.push(format!(
                    "{name} a={alpha}: e_low {:.4} <= roof {:.4}, e_up {:.4}",
                    b.e_low, est.value, b.e_up
                ));
            }
        }
    }
    Ok(check("roof-consistency", ok, parts.join("; ")))
}

fn inequalities(cfg: &SuiteConfig) -> Vec<Line> {
    let rows = match inequality_suite(cfg) {
        Ok(r) => r,
        Err(e) => return vec![check("inequality-suite", false, format!("error: {e}"))],
    };
    let mandatory: Vec<_> = rows.iter().filter(|r| r.mandatory).collect();
    let failed: Vec<_> = mandatory.iter().filter(|r| !r.check.pass).collect();
    let mut out = vec![check(
        "inequality-suite",
        failed.is_empty(),
        match failed.first() {
            None => format!("{} mandatory rows pass", mandatory.len()),
            Some(f) => format!("{} of {} failed, first {}", failed.len(), mandatory.len(), f.csv()),
        },
    )];
    let bell: Vec<_> = rows.iter().filter(|r| r.state_id == "bell").collect();
    for r in bell.iter().filter(|r| !r.mandatory) {
        out.push(info(
            "gm-definitional-variant",
            format!(
                "Bell a=3: {:.4} >= {:.4} is {}",
                r.check.lhs,
                r.check.rhs,
                if r.check.pass { "satisfied" } else { "violated" }
            ),
        ));
    }
    let info_fail = rows.iter().filter(|r| !r.mandatory && !r.check.pass).count();
    out.push(info(
        "informational-rows",
        format!("{info_fail} of {} informational rows fail", rows.len() - mandatory.len()),
    ));
    out
}

fn branch_gap() -> Result<Line> {
    let mut parts = Vec::new();
    for alpha in [0.6, 3.0] {
        let mut worst = (0.0f64, 0.0);
        for k in 1..=1000 {
            let c = k as f64 / 1000.0;
            let p = extremal_curve(c, alpha, 3, Extremum::Min, CurveMethod::Paper)?.value;
            let e = extremal_curve(c, alpha, 3, Extremum::Min, CurveMethod::Enumeration)?.value;
            if p - e > worst.0 {
                worst = (p - e, c);
            }
        }
        parts.push(format!(
            "a={alpha}: closed-form R_L exceeds the true minimum by up to {:.4e} at c={:.3}",
            worst.0, worst.1
        ));
    }
    Ok(info("lower-branch-gap", parts.join("; ")))
}
