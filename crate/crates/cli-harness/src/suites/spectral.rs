use fourier_core::{Complex64, LoopElement, ModeWindow};
use operator_analysis::{commutator_norm, dixmier_scan, sobolev_critical_loop, tameness_probe};

use super::boxed;
use crate::report::{Measured, Relation, Runner};

const SMALL: usize = 64;
const LARGE: usize = 128;
const CRITICAL_DELTA: f64 = 0.05;

pub(super) fn run(r: &mut Runner) {
    let cfg = r.config().clone();
    let windows = [
        ModeWindow::new(SMALL, 1).expect("radius"),
        ModeWindow::new(LARGE, 1).expect("radius"),
    ];
    let inputs = format!("K={SMALL},{LARGE}");
    for &q in &cfg.q {
        r.check(
            "tameness.bounded_commutator",
            &format!("q={q}"),
            &inputs,
            0.01,
            Relation::AtMost,
            || {
                let e = LoopElement::scalar(&[(1, Complex64::new(1.0, 0.0))]);
                let a = commutator_norm(q, &e, windows[0])?;
                let b = commutator_norm(q, &e, windows[1])?;
                Ok(Measured::with_observed((b - a).abs() / b, b))
            },
        );
        r.check(
            "tameness.second_commutator_growth",
            &format!("q={q}"),
            &format!("{inputs};delta={CRITICAL_DELTA}"),
            0.1,
            Relation::AtLeast,
            || {
                let x = sobolev_critical_loop(q, CRITICAL_DELTA, LARGE);
                let v = tameness_probe(q, 2, &x, &windows)?;
                Ok(Measured::with_observed(v[1] / v[0] - 1.0, v[1]))
            },
        );
    }

    for &qp in &cfg.dixmier_qp {
        if (qp - 1.0).abs() < 1e-12 {
            r.check(
                "dixmier.critical_average",
                "qp=1",
                &format!("n={}", cfg.dixmier_n),
                0.05,
                Relation::AtMost,
                || {
                    let scan = dixmier_scan(1.0, 1.0, cfg.dixmier_n);
                    let last = scan.last().ok_or_else(|| boxed("empty scan"))?.average;
                    Ok(Measured::with_observed((last - 1.0).abs(), last))
                },
            );
        } else if qp < 1.0 {
            r.check(
                "dixmier.subcritical_growth",
                &format!("qp={qp}"),
                "n=1000,10000",
                2.0,
                Relation::AtLeast,
                || {
                    let scan = dixmier_scan(qp, 1.0, 10_000);
                    let at = |n: u64| {
                        scan.iter()
                            .find(|pt| pt.n == n)
                            .map(|pt| pt.average)
                            .ok_or_else(|| boxed(format!("no point at {n}")))
                    };
                    Ok(Measured::residual(at(10_000)? / at(1_000)?))
                },
            );
        } else {
            r.check(
                "dixmier.supercritical_decay",
                &format!("qp={qp}"),
                &format!("n={}", cfg.dixmier_n),
                0.0,
                Relation::AtMost,
                || {
                    let scan = dixmier_scan(qp, 1.0, cfg.dixmier_n);
                    // largest increase between consecutive grid points; averages must fall
                    let rise = scan
                        .windows(2)
                        .map(|w| w[1].average - w[0].average)
                        .fold(f64::NEG_INFINITY, f64::max);
                    Ok(Measured::with_observed(
                        rise.max(0.0),
                        scan.last().map_or(0.0, |pt| pt.average),
                    ))
                },
            );
        }
    }
}
