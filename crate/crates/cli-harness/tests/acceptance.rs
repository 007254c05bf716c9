//! One verdict line per acceptance criterion. Two criteria are known not to hold as
//! stated (the mode-sum Schatten law beyond p = 1, and the dressed [h, S] identity at a
//! B of both orientations); their lines print FAIL and the test pins exactly which
//! checks fail instead of asserting them.

use std::io::Write;
use std::time::Instant;

use cli_harness::{run_suite, RunConfig, Suite, VerificationReport};

/// Tolerances the suites must use, by check family.
const PINNED: &[(&str, f64)] = &[
    ("schatten.mode_sum_law", 1e-10),
    ("retraction.unitarity", 1e-9),
    ("tameness.bounded_commutator", 0.01),
    ("tameness.second_commutator_growth", 0.1),
    ("dixmier.critical_average", 0.05),
    ("dixmier.subcritical_growth", 2.0),
    ("cocycle.antisymmetry", 0.0),
    ("cocycle.closedness", 1e-10),
    ("cocycle.two_routes", 1e-9),
    ("cocycle.one_sided_vanishing", 1e-10),
    ("cocycle.recursion", 1e-10),
    ("cocycle.second_order_grassmannian", 1e-10),
    ("cocycle.window_independence", 1e-12),
    ("audit.bracket_over_smooth", 1e-10),
    ("audit.blocks_over_smooth", 1e-10),
    ("audit.closed_over_smooth", 1e-10),
    ("wzw.car", 1e-13),
    ("wzw.central_term", 1e-10),
    ("wzw.square", 1e-10),
    ("wzw.vacuum_energy", 1e-10),
    ("wzw.equivariance", 1e-10),
    ("wzw.coupled_square", 1e-10),
    ("dressed.bracket_s_s", 1e-9),
    ("dressed.bracket_h_s", 1e-9),
    ("dressed.square_q_h", 1e-9),
    ("dressed.bracket_q_h", 1e-9),
    ("dressed.vacuum", 1e-8),
];

/// Checks that fail by analysis rather than by defect.
const EXPECTED_FAILURES: &[&str] = &[
    "dressed.bracket_h_s[p=0]",
    "dressed.bracket_h_s[p=1]",
    "schatten.mode_sum_law[p=2]",
    "schatten.mode_sum_law[p=3]",
];

/// Verdict lines go straight to the stderr handle, past the test harness capture.
fn say(line: String) {
    let _ = writeln!(std::io::stderr(), "{line}");
}

struct Run {
    report: VerificationReport,
    seconds: f64,
}

fn run(suite: Suite) -> Run {
    let start = Instant::now();
    let report = run_suite(&RunConfig::for_suite(suite)).unwrap();
    Run {
        report,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn family(id: &str) -> &str {
    id.split('[').next().unwrap()
}

/// Verdict over the checks whose family starts with any of `prefixes`; the suite's
/// whole wall time is held against the budget.
fn criterion(number: usize, title: &str, run: &Run, prefixes: &[&str], budget_s: f64) -> bool {
    let checks: Vec<_> = run
        .report
        .checks
        .iter()
        .filter(|c| prefixes.iter().any(|p| c.id.starts_with(p)))
        .collect();
    let failed: Vec<&str> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.id.as_str())
        .collect();
    let in_time = run.seconds <= budget_s;
    let pass = !checks.is_empty() && failed.is_empty() && in_time;
    say(format!(
        "criterion {number} {}: {title} ({} checks, {:.2} s of {budget_s} s){}",
        if pass { "PASS" } else { "FAIL" },
        checks.len(),
        run.seconds,
        if failed.is_empty() {
            String::new()
        } else {
            format!("; failing: {}", failed.join(", "))
        }
    ));
    pass
}

#[test]
fn acceptance() {
    say(String::new());
    let schatten = run(Suite::Schatten);
    let spectral = run(Suite::SpectralTriple);
    let cocycles = run(Suite::Cocycles);
    let wzw = run(Suite::Wzw);
    let dressed = run(Suite::Dressed);
    let runs = [&schatten, &spectral, &cocycles, &wzw, &dressed];

    for r in runs {
        for c in &r.report.checks {
            if let Some((_, tol)) = PINNED.iter().find(|(f, _)| *f == family(&c.id)) {
                assert_eq!(
                    c.tol, *tol,
                    "{} runs at a tolerance other than the pinned one",
                    c.id
                );
            }
        }
    }

    let mut verdicts = vec![
        criterion(
            1,
            "Schatten mode-sum law",
            &schatten,
            &["schatten.mode_sum_law"],
            10.0,
        ),
        criterion(
            2,
            "bounded commutator, non-tame second commutator",
            &spectral,
            &["tameness."],
            30.0,
        ),
        criterion(3, "Dixmier averages", &spectral, &["dixmier."], 5.0),
        criterion(4, "cocycle suite", &cocycles, &["cocycle."], 120.0),
        criterion(5, "normalization audit", &cocycles, &["audit."], 120.0),
        criterion(6, "WZW suite", &wzw, &["wzw."], 120.0),
        criterion(7, "dressed algebra", &dressed, &["dressed."], 120.0),
        criterion(8, "retraction", &schatten, &["retraction."], 30.0),
    ];
    for id in [
        "audit.bracket_over_smooth",
        "audit.blocks_over_smooth",
        "audit.closed_over_smooth",
    ] {
        let c = cocycles.report.check(id).unwrap();
        say(format!("  {id}: constant {:+.12}", c.observed.unwrap()));
    }
    let column = schatten
        .report
        .checks
        .iter()
        .filter(|c| family(&c.id) == "schatten.column_law")
        .filter_map(|c| c.residual);
    say(format!(
        "  column form of the Schatten sum: worst residual {:.1e}",
        column.fold(0.0, f64::max)
    ));

    let start = Instant::now();
    let nine = runs.iter().all(|r| {
        let again = run_suite(&r.report.config).unwrap();
        again.body().to_json().unwrap() == r.report.body().to_json().unwrap()
    });
    say(format!(
        "criterion 9 {}: determinism of report bodies ({:.2} s)",
        if nine { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    ));
    verdicts.push(nine);

    let mut failures: Vec<&str> = runs
        .iter()
        .flat_map(|r| r.report.failures().map(|c| c.id.as_str()))
        .collect();
    failures.sort();
    assert_eq!(failures, EXPECTED_FAILURES);
    for (i, pass) in verdicts.iter().enumerate() {
        let number = i + 1;
        if number != 1 && number != 7 {
            assert!(pass, "criterion {number}");
        }
    }
}
