use std::time::Instant;

use realforms::suite::{run_check, SuiteParams, CHECKS};
use realforms::surfaces::Param;

#[test]
fn every_check_passes_symbolically() {
    let p = SuiteParams::default();
    for (id, _) in CHECKS {
        let t = Instant::now();
        let out = run_check(id, &p).unwrap();
        println!(
            "{id}: {} claims, {:?}",
            out.report.claims.len(),
            t.elapsed()
        );
        assert!(out.report.passed(), "{}", out.report);
    }
}

#[test]
fn every_check_passes_at_rational_values() {
    let p = SuiteParams {
        alpha: Param::integer(2),
        beta: Param::ratio(1, 2),
        d_max: 3,
    };
    for (id, _) in CHECKS {
        let out = run_check(id, &p).unwrap();
        assert!(out.report.passed(), "{id}: {}", out.report);
    }
}

#[test]
fn ids_are_sorted_and_unknown_rejected() {
    let ids: Vec<&str> = CHECKS.iter().map(|c| c.0).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
    assert!(run_check("bogus-id", &SuiteParams::default()).is_err());
}
