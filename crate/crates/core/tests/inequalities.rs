use std::time::Instant;

use renyi_bounds::measures::{inequality_suite, Measure, SuiteConfig};

#[test]
fn full_ensemble_passes_mandatory_checks() {
    let t = Instant::now();
    let rows = inequality_suite(&SuiteConfig::default()).unwrap();
    eprintln!("{} rows in {:.1?}", rows.len(), t.elapsed());
    let failed: Vec<_> = rows.iter().filter(|r| r.mandatory && !r.check.pass).collect();
    assert!(failed.is_empty(), "{failed:#?}");

    for m in [Measure::Eof, Measure::Gm, Measure::Ln, Measure::GConc] {
        assert!(rows.iter().any(|r| r.measure == m && r.mandatory));
    }
    let info_fail = rows.iter().filter(|r| !r.mandatory && !r.check.pass).count();
    eprintln!("informational rows failing: {info_fail}");
    let bell = rows
        .iter()
        .find(|r| r.state_id == "bell" && !r.mandatory)
        .unwrap();
    assert!(!bell.check.pass);
    assert!((bell.check.lhs - 0.75).abs() < 1e-12);
}
