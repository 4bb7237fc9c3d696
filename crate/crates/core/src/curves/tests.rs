use approx::assert_relative_eq;
use proptest::prelude::*;

use super::*;

const C3: f64 = 1.1547005383792517; // 2/√3

fn value(c: f64, alpha: f64, m: usize, mode: Extremum, method: CurveMethod) -> f64 {
    extremal_curve(c, alpha, m, mode, method).unwrap().value
}

#[test]
fn gamma_solution_examples() {
    let sols = gamma_solutions(1, 2, C3);
    assert_eq!(sols.len(), 1);
    assert_relative_eq!(sols[0].gamma, 1.0 / 3.0, epsilon = 1e-7);
    assert_relative_eq!(sols[0].delta, 1.0 / 3.0, epsilon = 1e-7);

    let sols = gamma_solutions(1, 1, 1.0);
    assert_eq!(sols.len(), 1);
    assert_relative_eq!(sols[0].gamma, 0.5, epsilon = 1e-12);
    assert_relative_eq!(sols[0].delta, 0.5, epsilon = 1e-12);

    let sols = gamma_solutions(1, 2, 0.94341);
    assert_eq!(sols.len(), 1);
    assert_eq!(sols[0].branch, Branch::Plus);
    assert_relative_eq!(sols[0].gamma, 0.717742362551488, epsilon = 1e-12);
    assert_relative_eq!(sols[0].delta, 0.141128818724256, epsilon = 1e-12);
    let (r1, r2) = sols[0].residuals(0.94341);
    assert!(r1 < 1e-10 && r2 < 1e-10);

    assert!(gamma_solutions(2, 2, 0.1).is_empty());
    assert!(gamma_solutions(1, 0, 0.5).is_empty());
}

#[test]
fn both_branches_and_mirror_symmetry() {
    let c = 1.1;
    let sols = gamma_solutions(1, 2, c);
    let minus = sols.iter().find(|p| p.branch == Branch::Minus).unwrap();
    let mirror = gamma_solutions(2, 1, c)
        .into_iter()
        .find(|p| p.branch == Branch::Plus)
        .unwrap();
    assert_relative_eq!(minus.gamma, mirror.delta, epsilon = 1e-14);
    assert_relative_eq!(minus.delta, mirror.gamma, epsilon = 1e-14);
    assert_eq!(minus.schmidt(3).len(), 3);
    for (a, b) in minus.schmidt(3).iter().zip(mirror.schmidt(3)) {
        assert_relative_eq!(*a, b, epsilon = 1e-14);
    }
}

#[test]
fn pattern_value_examples() {
    let t = 1.0 / 3.0;
    let uni = StationaryPattern {
        n1: 1,
        n2: 2,
        branch: Branch::Plus,
        gamma: t,
        delta: t,
    };
    let half = StationaryPattern {
        n1: 1,
        n2: 1,
        branch: Branch::Plus,
        gamma: 0.5,
        delta: 0.5,
    };
    for alpha in [0.0, 0.4, 1.0, 2.0, 3.0, f64::INFINITY] {
        assert_relative_eq!(pattern_value(&uni, alpha), 3f64.log2(), epsilon = 1e-12);
        assert_relative_eq!(pattern_value(&half, alpha), 1.0, epsilon = 1e-12);
    }
    let p = gamma_solutions(1, 2, 0.94341)[0];
    assert_relative_eq!(pattern_value(&p, 3.0), 0.706807865988259, epsilon = 1e-12);
}

#[test]
fn curve_examples() {
    for mode in [Extremum::Min, Extremum::Max] {
        for method in [CurveMethod::Enumeration, CurveMethod::Paper] {
            assert_relative_eq!(value(C3, 3.0, 3, mode, method), 3f64.log2(), epsilon = 1e-7);
        }
    }
    assert_relative_eq!(
        value(1.0, 3.0, 3, Extremum::Max, CurveMethod::Enumeration),
        1.0,
        epsilon = 1e-12
    );
    assert_relative_eq!(
        value(1.1, 3.0, 3, Extremum::Min, CurveMethod::Paper),
        1.240865358289653,
        epsilon = 1e-12
    );
    assert_relative_eq!(
        simplex_oracle(1.1, 3.0, 3, Extremum::Min).unwrap(),
        1.240865358289653,
        epsilon = 1e-6
    );
    assert_eq!(value(0.0, 3.0, 3, Extremum::Max, CurveMethod::Enumeration), 0.0);
}

#[test]
fn curve_input_errors() {
    let e = extremal_curve(1.2, 3.0, 3, Extremum::Min, CurveMethod::Enumeration);
    assert!(matches!(e, Err(Error::OutOfRange { .. })));
    let e = extremal_curve(0.5, -1.0, 3, Extremum::Min, CurveMethod::Enumeration);
    assert!(matches!(e, Err(Error::InvalidAlpha(_))));
    let e = extremal_curve(0.5, 3.0, 1, Extremum::Min, CurveMethod::Enumeration);
    assert!(matches!(e, Err(Error::InvalidDims { .. })));
    for bad in [0.0, f64::INFINITY] {
        let e = extremal_curve(0.5, bad, 3, Extremum::Min, CurveMethod::Paper);
        assert!(matches!(e, Err(Error::UnsupportedBranchAlpha(_))));
        assert!(ExtremalCurve::new(bad, 3, Extremum::Min, CurveMethod::Paper).is_err());
    }
    assert!(simplex_oracle(0.5, 3.0, 5, Extremum::Min).is_err());
}

#[test]
fn enumeration_supports_limit_orders() {
    // Hartley counts support; the min-entropy reads the largest entry.
    assert_relative_eq!(
        value(0.5, 0.0, 3, Extremum::Min, CurveMethod::Enumeration),
        1.0,
        epsilon = 1e-12
    );
    assert_relative_eq!(
        value(0.5, 0.0, 3, Extremum::Max, CurveMethod::Enumeration),
        3f64.log2(),
        epsilon = 1e-12
    );
    let hinf = value(1.0, f64::INFINITY, 3, Extremum::Min, CurveMethod::Enumeration);
    let oracle = simplex_oracle(1.0, f64::INFINITY, 3, Extremum::Min).unwrap();
    assert_relative_eq!(hinf, oracle, epsilon = 1e-6);
}

#[test]
fn oracle_examples() {
    for alpha in [0.3, 1.0, 3.0] {
        for mode in [Extremum::Min, Extremum::Max] {
            assert_relative_eq!(
                simplex_oracle(C3, alpha, 3, mode).unwrap(),
                3f64.log2(),
                epsilon = 1e-6
            );
        }
    }
    assert_relative_eq!(
        simplex_oracle(1.0, 3.0, 3, Extremum::Max).unwrap(),
        1.0,
        epsilon = 1e-9
    );
    assert_relative_eq!(
        simplex_oracle(0.94341, 3.0, 3, Extremum::Min).unwrap(),
        0.706807865988259,
        epsilon = 1e-6
    );
    assert_relative_eq!(
        simplex_oracle(1.0, 3.0, 2, Extremum::Min).unwrap(),
        1.0,
        epsilon = 1e-12
    );
}

#[test]
fn two_term_pattern_is_not_minimal_below_one() {
    // At c ≈ 0.943, α = 3 the three-term pattern undercuts R₁₁.
    let p = gamma_solutions(1, 1, 0.94341)[0];
    let r11 = pattern_value(&p, 3.0);
    assert_relative_eq!(r11, 0.794323370813990, epsilon = 1e-12);
    let enum_min = value(0.94341, 3.0, 3, Extremum::Min, CurveMethod::Enumeration);
    let branch_min = value(0.94341, 3.0, 3, Extremum::Min, CurveMethod::Paper);
    assert_relative_eq!(branch_min, r11, epsilon = 1e-12);
    assert_relative_eq!(enum_min, 0.706807865988259, epsilon = 1e-12);
}

#[test]
fn segment_endpoints_are_uniform() {
    for m in 2..=6 {
        for d in 2..=m {
            let cd = max_concurrence(d);
            let logd = (d as f64).log2();
            for alpha in [0.3, 1.0, 2.0, 3.0, 7.0] {
                for mode in [Extremum::Min, Extremum::Max] {
                    let v = value(cd, alpha, m, mode, CurveMethod::Paper);
                    assert!((v - logd).abs() < 1e-6, "m={m} d={d} α={alpha} {mode:?}: {v}");
                }
                // The true extrema bracket the uniform point and meet it at c_max.
                let lo = value(cd, alpha, m, Extremum::Min, CurveMethod::Enumeration);
                let hi = value(cd, alpha, m, Extremum::Max, CurveMethod::Enumeration);
                assert!(lo <= logd + 1e-9 && hi >= logd - 1e-9);
                if d == m {
                    assert!((lo - logd).abs() < 1e-6 && (hi - logd).abs() < 1e-6);
                }
            }
        }
    }
}

#[test]
fn branch_ordering_at_unit_concurrence() {
    let r12 = |a| pattern_curve(1, 2, 1.0, a).unwrap();
    let r21 = |a| pattern_curve(2, 1, 1.0, a).unwrap();
    assert_relative_eq!(r12(0.6), 1.381213659537776, epsilon = 1e-12);
    assert_relative_eq!(r12(3.0), 0.855246691402508, epsilon = 1e-12);
    for a in [0.3, 0.6, 1.0, 1.5] {
        assert!(r12(a) > r21(a));
    }
    for a in [2.5, 3.0, 5.0] {
        assert!(r12(a) < r21(a));
    }
    assert_relative_eq!(r12(2.0), r21(2.0), epsilon = 1e-12);
}

#[test]
fn pattern_curve_domains() {
    let r12 = PatternCurve {
        n1: 1,
        n2: 2,
        alpha: 3.0,
    };
    assert_eq!(r12.label(), "R12");
    let (lo, hi) = r12.domain();
    assert_relative_eq!(lo, 1.0, epsilon = 1e-15);
    assert_relative_eq!(hi, C3, epsilon = 1e-15);
    assert!(r12.eval(0.9).is_none());
    assert!(r12.eval(1.1).is_some());
    let r11 = PatternCurve {
        n1: 1,
        n2: 1,
        alpha: 3.0,
    };
    assert_eq!(r11.domain().0, 0.0);
}

#[test]
fn branch_segments() {
    assert_eq!(branch_segment(0.3, 3), 2);
    assert_eq!(branch_segment(1.0, 3), 2);
    assert_eq!(branch_segment(1.0 + 1e-9, 3), 3);
    assert_eq!(branch_segment(C3, 3), 3);
    assert_eq!(branch_segment(1.2, 4), 4);
}

#[test]
fn alpha_two_collapses() {
    for c in [0.2, 0.7, 1.0, 1.1] {
        let want = -(1.0 - c * c / 2.0f64).log2();
        for method in [CurveMethod::Enumeration, CurveMethod::Paper] {
            let lo = value(c, 2.0, 3, Extremum::Min, method);
            let hi = value(c, 2.0, 3, Extremum::Max, method);
            assert_relative_eq!(lo, want, epsilon = 1e-12);
            assert_relative_eq!(hi, want, epsilon = 1e-12);
        }
    }
}

#[test]
fn closed_max_branch_matches_enumeration_for_large_alpha() {
    // For α = 3 the γ⁻ branch attains the maximum on each segment.
    for m in [3, 4] {
        let cmax = max_concurrence(m);
        for k in 1..=60 {
            let c = cmax * k as f64 / 60.0;
            let e = value(c, 3.0, m, Extremum::Max, CurveMethod::Enumeration);
            let p = value(c, 3.0, m, Extremum::Max, CurveMethod::Paper);
            assert!((e - p).abs() < 1e-9, "m={m} c={c}: {e} vs {p}");
        }
    }
}

proptest! {
    #[test]
    fn patterns_satisfy_constraints(m in 2usize..8, frac in 0.0f64..=1.0) {
        let c = max_concurrence(m) * frac;
        for p in stationary_patterns(c, m) {
            let (r1, r2) = p.residuals(c);
            prop_assert!(r1 < 1e-10 && r2 < 1e-10, "{p:?} at c={c}: {r1} {r2}");
            prop_assert!((0.0..=1.0).contains(&p.gamma) && (0.0..=1.0).contains(&p.delta));
        }
    }

    #[test]
    fn min_below_max(m in 2usize..8, frac in 0.001f64..=1.0, alpha in 0.0f64..10.0) {
        let c = max_concurrence(m) * frac;
        let lo = value(c, alpha, m, Extremum::Min, CurveMethod::Enumeration);
        let hi = value(c, alpha, m, Extremum::Max, CurveMethod::Enumeration);
        prop_assert!(lo <= hi + 1e-12);
        prop_assert!(lo >= 0.0 && hi <= (m as f64).log2() + 1e-12);
    }
}
