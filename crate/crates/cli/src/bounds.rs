use std::path::PathBuf;
use std::process::ExitCode;

use clap::Args;
use renyi_bounds::concurrence::ppt_ccnr_norms;
use renyi_bounds::hull::{evaluate_bounds, BoundsOptions, HullCache};
use renyi_bounds::qstate::file::parse_state;

use crate::failure::Failure;
use crate::output::{num, Report};
use crate::{CurveOpts, OutOpts, TolOpts};

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// JSON state file.
    #[arg(long)]
    pub state: PathBuf,
    #[arg(long)]
    pub alpha: f64,
    #[command(flatten)]
    pub curve: CurveOpts,
    #[command(flatten)]
    pub tol: TolOpts,
    #[command(flatten)]
    pub out: OutOpts,
}

pub fn run(a: BoundsArgs) -> Result<ExitCode, Failure> {
    let text = std::fs::read_to_string(&a.state)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", a.state.display())))?;
    let rho = parse_state(&text)?.into_density();
    let opts = BoundsOptions {
        method: a.curve.method.into(),
        grid_size: a.curve.grid,
        tolerances: a.tol.tolerances()?,
    };
    let mut r = Report::new("bounds");
    r.config("state", a.state.display());
    r.config("alpha", a.alpha);
    r.config("dims", format!("{}x{}", rho.dims().m(), rho.dims().n()));
    r.config("method", opts.method.as_str());
    r.config("grid", opts.grid_size);
    r.config("tol_herm", opts.tolerances.herm);
    r.config("tol_psd", opts.tolerances.psd);
    r.config("tol_trace", opts.tolerances.trace);

    let v = rho.validate()?;
    r.line("quantity,value");
    r.line(&format!("hermiticity_residual,{}", num(v.hermiticity)));
    r.line(&format!("min_eigenvalue,{}", num(v.min_eigenvalue)));
    r.line(&format!("trace_residual,{}", num(v.trace_residual)));
    let violations = v.violations(&opts.tolerances);
    if !violations.is_empty() {
        r.emit(a.out.out.as_deref())?;
        return Err(Failure::Validation(violations.join("; ")));
    }

    let mut cache = HullCache::new();
    let report = evaluate_bounds(&rho, a.alpha, &opts, &mut cache)?;
    let (pt, cc) = ppt_ccnr_norms(&rho)?;
    let (pa, pb) = rho.reduced_purities();
    let b = report.bracket;
    for (k, x) in [
        ("purity", rho.purity()),
        ("purity_A", pa),
        ("purity_B", pb),
        ("trace_norm_partial_transpose", pt),
        ("trace_norm_realignment", cc),
        ("lower_term_ppt", b.terms.ppt),
        ("lower_term_ccnr", b.terms.ccnr),
        ("lower_term_purity_A", b.terms.purity_a),
        ("lower_term_purity_B", b.terms.purity_b),
        ("c_low", b.lower),
        ("c_up", b.upper),
    ] {
        r.line(&format!("{k},{}", num(x)));
    }
    r.line(&format!("c_low_source,{}", b.lower_source.as_str()));
    r.line(&format!("c_up_source,{}", b.upper_source.as_str()));
    r.line(&format!("e_low,{}", num(report.e_low)));
    r.line(&format!("e_up,{}", num(report.e_up)));
    r.emit(a.out.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
