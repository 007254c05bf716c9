use std::collections::BTreeSet;

use cli_harness::anchors::ANCHORS;
use cli_harness::{
    run_suite, HarnessError, Relation, RunConfig, Suite, VerificationReport, SCHEMA_VERSION,
};

fn schatten() -> VerificationReport {
    run_suite(&RunConfig::for_suite(Suite::Schatten)).unwrap()
}

#[test]
fn report_survives_json() {
    let report = schatten();
    assert_eq!(report.schema_version, SCHEMA_VERSION);
    let back = VerificationReport::from_json(&report.to_json().unwrap()).unwrap();
    assert_eq!(back, report);
    let ids: Vec<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    assert_eq!(report.summary.total, report.checks.len());
    assert_eq!(
        report.summary.passed + report.summary.failed,
        report.summary.total
    );
}

#[test]
fn every_check_is_anchored_and_digested() {
    let report = schatten();
    for c in &report.checks {
        assert!(!c.anchor.is_empty(), "{}", c.id);
        assert_eq!(c.inputs_digest.len(), 64);
        assert!(c.inputs_digest.chars().all(|ch| ch.is_ascii_hexdigit()));
    }
    let digests: BTreeSet<&str> = report
        .checks
        .iter()
        .map(|c| c.inputs_digest.as_str())
        .collect();
    assert_eq!(digests.len(), report.checks.len());

    let families: BTreeSet<&str> = ANCHORS.iter().map(|(f, _)| *f).collect();
    assert_eq!(families.len(), ANCHORS.len(), "duplicate family");
    assert!(ANCHORS.iter().all(|(_, a)| !a.is_empty()));
}

#[test]
fn a_tightened_tolerance_fails_with_its_digest() {
    let mut cfg = RunConfig::for_suite(Suite::Schatten);
    cfg.set("tol.retraction.decay_gain", "100").unwrap();
    let report = run_suite(&cfg).unwrap();
    let failed: Vec<_> = report
        .failures()
        .filter(|c| c.id.starts_with("retraction.decay_gain"))
        .collect();
    assert!(!failed.is_empty());
    for c in failed {
        assert_eq!(c.relation, Relation::AtLeast);
        assert_eq!(c.tol, 100.0);
        assert!(c.residual.is_some() && c.error.is_none());
        assert_eq!(
            c.inputs_digest,
            schatten().check(&c.id).unwrap().inputs_digest
        );
    }
}

#[test]
fn the_seed_enters_the_digest() {
    let mut cfg = RunConfig::for_suite(Suite::SpectralTriple);
    let a = run_suite(&cfg).unwrap();
    cfg.seed += 1;
    let b = run_suite(&cfg).unwrap();
    for (x, y) in a.checks.iter().zip(&b.checks) {
        assert_eq!(x.id, y.id);
        assert_ne!(x.inputs_digest, y.inputs_digest);
    }
}

#[test]
fn csv_and_text_carry_every_check() {
    let report = schatten();
    let csv = report.to_csv();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "id,anchor,inputs_digest,residual,relation,tol,observed,pass,error,wall_ms"
    );
    assert_eq!(lines.count(), report.checks.len());
    let text = report.to_text();
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("PASS") || l.starts_with("FAIL"))
            .count(),
        report.checks.len()
    );
    assert!(text.ends_with(&format!("{} failed\n", report.summary.failed)));
}

#[test]
fn bodies_ignore_wall_time() {
    let a = run_suite(&RunConfig::for_suite(Suite::Wzw)).unwrap();
    let b = run_suite(&RunConfig::for_suite(Suite::Wzw)).unwrap();
    assert_eq!(a.body(), b.body());
    assert!(a.body().checks.iter().all(|c| c.wall_ms == 0.0));
}

#[test]
fn refusal_happens_before_any_check() {
    let mut cfg = RunConfig::for_suite(Suite::Cocycles);
    cfg.set("p", "1").unwrap();
    cfg.set("bandwidth", "2").unwrap();
    cfg.set("window", "13").unwrap();
    assert!(matches!(run_suite(&cfg), Err(HarnessError::Budget(_))));
}
