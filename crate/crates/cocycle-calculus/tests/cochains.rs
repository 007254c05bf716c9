mod common;

use cocycle_calculus::*;
use common::*;
use fourier_core::{BlockOperator, CMat, Complex64, LoopElement, ModeWindow};

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn scalar_mode(n: i64) -> LoopElement {
    LoopElement::scalar(&[(n, c(1.0))])
}

#[test]
fn basic_cocycle_examples() {
    let w = ModeWindow::new(16, 1).unwrap();
    let ev = Evaluator::new(&GrassmannConnection::zero(w));
    let value = |form, x: &LoopElement, y: &LoopElement| {
        ev.value(
            &C0 { form },
            &[ev.element(x).unwrap(), ev.element(y).unwrap()],
        )
        .unwrap()
    };
    let (e1, em1) = (scalar_mode(1), scalar_mode(-1));
    assert!((value(C0Form::EpsilonBracket, &e1, &em1) - c(-1.0)).norm() < 1e-14);
    assert!((value(C0Form::Smooth, &e1, &em1) - c(-1.0)).norm() < 1e-14);
    assert!((value(C0Form::Blocks, &e1, &em1) - c(1.0)).norm() < 1e-14);
    for n in 1..=4 {
        let v = value(C0Form::EpsilonBracket, &scalar_mode(n), &scalar_mode(-n));
        assert!((v - c(-(n as f64))).norm() < 1e-13);
    }
    let mut s = setup(1, 12);
    let x = &loops(&mut s.rng, 1)[0];
    let ev = Evaluator::new(&s.conn);
    for form in [C0Form::EpsilonBracket, C0Form::Blocks, C0Form::Smooth] {
        let a = ev.element(x).unwrap();
        assert!(ev.value(&C0 { form }, &[a.clone(), a]).unwrap().norm() < 1e-13);
    }
}

#[test]
fn normalization_audit_constants() {
    let mut s = setup(2, 16);
    let ev = Evaluator::new(&s.conn);
    let xs = loops(&mut s.rng, 40);
    let els = elements(&ev, &xs);
    let pairs: Vec<(LieElement, LieElement)> = els
        .chunks(2)
        .map(|p| (p[0].clone(), p[1].clone()))
        .collect();
    let audit = normalization_audit(&ev, &pairs).unwrap();
    assert_eq!(audit.pairs_used, 20);
    assert!(
        (audit.bracket_over_smooth.mean - 1.0).abs() < 1e-10
            && audit.bracket_over_smooth.spread < 1e-10
    );
    assert!(
        (audit.blocks_over_smooth.mean + 1.0).abs() < 1e-10
            && audit.blocks_over_smooth.spread < 1e-10
    );
    assert!(
        (audit.closed_over_smooth.mean - 4.0).abs() < 1e-10
            && audit.closed_over_smooth.spread < 1e-10
    );
}

#[test]
fn trace_words_are_cyclic_and_linear() {
    let mut s = setup(3, 12);
    let ev = Evaluator::new(&s.conn);
    let xs = elements(&ev, &loops(&mut s.rng, 2));
    let w1 = word([
        b_power(2),
        vec![Slot::op(xs[0].operator())],
        b_power(1),
        vec![Slot::op(xs[1].differential())],
    ]);
    let mut rotated = w1.clone();
    rotated.rotate_left(2);
    let a = ev.eval(&TraceWordSum::single(c(1.0), w1.clone()));
    let b = ev.eval(&TraceWordSum::single(c(1.0), rotated));
    assert!((a - b).norm() < 1e-12 * a.norm().max(1.0));
    let mut doubled = TraceWordSum::single(c(2.0), w1.clone());
    doubled.push(Complex64::new(0.0, -1.0), w1);
    assert!((ev.eval(&doubled) - a * Complex64::new(2.0, -1.0)).norm() < 1e-12 * a.norm().max(1.0));

    let dense = {
        let b = s.conn.b().matrix();
        let x = xs[0].operator().matrix();
        let dy = xs[1].differential().matrix();
        (b * b * x * b * dy).trace()
    };
    assert!((a - dense).norm() < 1e-11 * a.norm().max(1.0));
}

#[test]
fn coboundary_of_function_without_b_vanishes() {
    let mut s = setup(4, 12);
    let ev = Evaluator::new(&s.conn);
    let xs = elements(&ev, &loops(&mut s.rng, 1));
    let f = TraceFunction {
        name: "fixed".into(),
        sum: TraceWordSum::single(
            c(1.0),
            vec![Slot::op(ev.epsilon()), Slot::op(xs[0].differential())],
        ),
        budget: 1,
    };
    let other = elements(&ev, &loops(&mut s.rng, 1));
    assert_eq!(ev.value(&Coboundary(f), &other).unwrap(), c(0.0));
}

#[test]
fn tilde_c_zero_matches_direct_trace() {
    let mut s = setup(5, 12);
    let ev = Evaluator::new(&s.conn);
    let xs = elements(&ev, &loops(&mut s.rng, 2));
    let b = s.conn.b().matrix();
    let (x, y) = (xs[0].operator().matrix(), xs[1].operator().matrix());
    let direct = (b * x * y - b * y * x).trace();
    let value = ev.value(&TildeC { p: 0 }, &xs).unwrap();
    assert!((value - direct).norm() < 1e-12 * direct.norm().max(1.0));
}

#[test]
fn square_of_coboundary_vanishes() {
    for p in 0..=2 {
        let mut s = setup(10 + p as u64, 24 * (p + 1));
        let ev = Evaluator::new(&s.conn);
        let xs = elements(&ev, &loops(&mut s.rng, 3));
        let dd = ev
            .value(&Coboundary(Coboundary(TildeEta { p })), &xs)
            .unwrap();
        let scale = ev
            .value(&Coboundary(TildeEta { p }), &xs[..2])
            .unwrap()
            .norm();
        assert!(rel(dd.norm(), scale) < 1e-10, "p={p}: {dd} vs {scale}");
        let dd_eta = ev
            .value(&Coboundary(Coboundary(EtaP::standard(p))), &xs)
            .unwrap();
        assert!(
            rel(
                dd_eta.norm(),
                ev.value(&EtaP::standard(p), &xs[..1]).unwrap().norm()
            ) < 1e-10
        );
    }
}

#[test]
fn reduced_coboundary_of_tilde_eta() {
    for p in 0..=2 {
        let mut s = setup(20 + p as u64, 24 * (p + 1));
        let ev = Evaluator::new(&s.conn);
        let xs = elements(&ev, &loops(&mut s.rng, 2));
        let palais = ev.value(&Coboundary(TildeEta { p }), &xs).unwrap();
        let reduced = ev.value(&TildeEtaCoboundaryReduced { p }, &xs).unwrap();
        assert!(rel((palais - reduced).norm(), palais.norm()) < 1e-10);
    }
}

#[test]
fn cocycle_family() {
    for p in 0..=2usize {
        for seed in 0..3 {
            let mut s = setup(100 * p as u64 + seed, 24 * (p + 1));
            let ev = Evaluator::new(&s.conn);
            let xs = elements(&ev, &loops(&mut s.rng, 3));
            let pair = &xs[..2];
            let swapped = [xs[1].clone(), xs[0].clone()];

            let closed = ev.value(&CocycleP { p }, pair).unwrap();
            let via = ev.value(&cocycle_via_coboundary(p), pair).unwrap();
            let scale = closed.norm();
            assert!(scale > 1e-6);
            assert!(
                rel((closed - via).norm(), scale) < 1e-9,
                "p={p} routes {closed} {via}"
            );

            for cochain in [&CocycleP { p } as &dyn Cochain, &TildeC { p }] {
                let a = ev.value(cochain, pair).unwrap();
                let b = ev.value(cochain, &swapped).unwrap();
                assert_eq!(a, -b);
            }
            let tilde_scale = ev.value(&TildeC { p }, pair).unwrap().norm();
            let d_closed = ev.value(&Coboundary(CocycleP { p }), &xs).unwrap();
            let d_tilde = ev.value(&Coboundary(TildeC { p }), &xs).unwrap();
            assert!(
                rel(d_closed.norm(), scale) < 1e-10,
                "p={p} delta c {d_closed}"
            );
            assert!(
                rel(d_tilde.norm(), tilde_scale) < 1e-10,
                "p={p} delta tilde c {d_tilde}"
            );
        }
    }
}

#[test]
fn cocycles_vanish_on_one_sided_pairs() {
    for p in 0..=2usize {
        let mut s = setup(200 + p as u64, 24 * (p + 1));
        let ev = Evaluator::new(&s.conn);
        for sign in [-1, 1] {
            let xs = elements(&ev, &one_sided(&mut s.rng, 2, sign));
            let v = ev.value(&CocycleP { p }, &xs).unwrap();
            assert!(v.norm() < 1e-10, "p={p} sign={sign}: {v}");
        }
        let mixed = elements(&ev, &loops(&mut s.rng, 2));
        assert!(ev.value(&CocycleP { p }, &mixed).unwrap().norm() > 1e-6);
    }
}

#[test]
fn zero_connection_collapses_higher_cocycles() {
    let w = ModeWindow::new(24, FIBER).unwrap();
    let ev = Evaluator::new(&GrassmannConnection::zero(w));
    let mut s = setup(300, 24);
    let xs = elements(&ev, &loops(&mut s.rng, 2));
    assert!(ev.value(&CocycleP { p: 0 }, &xs).unwrap().norm() > 1e-3);
    for p in 1..=2 {
        assert_eq!(ev.value(&CocycleP { p }, &xs).unwrap(), c(0.0));
        assert_eq!(ev.value(&EtaP::standard(p), &xs[..1]).unwrap(), c(0.0));
    }
}

#[test]
fn recursion_between_consecutive_cocycles() {
    for p in 0..=1usize {
        for seed in 0..3 {
            let mut s = setup(400 + 10 * p as u64 + seed, 24 * (p + 2));
            let ev = Evaluator::new(&s.conn);
            let xs = elements(&ev, &loops(&mut s.rng, 2));
            let report = recursion_check(&ev, &xs[0], &xs[1], p).unwrap();
            assert!(rel(report.normalized, report.scale) < 1e-10, "{report:?}");
            assert!(
                rel(
                    report.rescaled_standard,
                    16.0f64.powi(p as i32 + 1) * report.scale
                ) < 1e-10,
                "{report:?}"
            );
            // the unrescaled statement does not hold
            assert!(report.literal > 1e-3 * report.scale, "{report:?}");
        }
    }
}

#[test]
fn second_order_cocycle_of_grassmannian_point() {
    let w = ModeWindow::new(4, FIBER).unwrap();
    let ev0 = Evaluator::new(&GrassmannConnection::zero(w.grow(20)));
    let mut s = setup(500, 24);
    let xs = elements(&ev0, &loops(&mut s.rng, 2));
    assert_eq!(ev0.value(&EtaF, &xs[..1]).unwrap(), c(0.0));
    assert_eq!(ev0.value(&C2F, &xs).unwrap(), c(0.0));

    for seed in 0..4 {
        let mut s = setup(510 + seed, 24);
        let ev = Evaluator::new(&s.conn);
        let xs = elements(&ev, &loops(&mut s.rng, 2));
        let c2 = ev.value(&C2F, &xs).unwrap();
        let c0 = ev
            .value(
                &C0 {
                    form: C0Form::EpsilonBracket,
                },
                &xs,
            )
            .unwrap();
        let deta = ev.value(&Coboundary(EtaF), &xs).unwrap();
        assert!(rel((c2 - c0 - deta).norm(), c2.norm()) < 1e-10);
        assert_eq!(
            ev.value(&C2F, &[xs[0].clone(), xs[0].clone()]).unwrap(),
            c(0.0)
        );

        let eta_f = ev.value(&EtaF, &xs[..1]).unwrap();
        let eta0 = ev.value(&EtaP::standard(0), &xs[..1]).unwrap();
        assert!(rel((eta_f + eta0 / 16.0).norm(), eta0.norm()) < 1e-12);
    }
}

#[test]
fn window_independence() {
    for p in 0..=2usize {
        let mut s = setup(600 + p as u64, 24 * (p + 1));
        let ev = Evaluator::new(&s.conn);
        let xs = loops(&mut s.rng, 3);
        let big_conn = grassmann_point(&s.g, s.conn.window().grow(8)).unwrap();
        let big = Evaluator::new(&big_conn);
        let (a, b) = (elements(&ev, &xs), elements(&big, &xs));
        let pairs: [(&dyn Cochain, usize); 4] = [
            (&CocycleP { p }, 2),
            (&TildeC { p }, 2),
            (&EtaP::standard(p), 1),
            (&Coboundary(CocycleP { p }), 3),
        ];
        for (cochain, k) in pairs {
            let u = ev.value(cochain, &a[..k]).unwrap();
            let v = big.value(cochain, &b[..k]).unwrap();
            assert!(
                rel((u - v).norm(), u.norm()) < 1e-12,
                "{}: {u} {v}",
                cochain.name()
            );
        }
    }
}

#[test]
fn budget_is_enforced() {
    let s = setup(700, 12);
    let ev = Evaluator::new(&s.conn);
    let xs = elements(&ev, &loops(&mut setup(701, 12).rng, 2));
    assert!(matches!(
        ev.value(&CocycleP { p: 1 }, &xs),
        Err(CocycleError::WindowTooSmall { required: 14, .. })
    ));
    assert!(matches!(
        ev.value(&CocycleP { p: 0 }, &xs[..1]),
        Err(CocycleError::ArityMismatch { .. })
    ));
}

#[test]
fn potential_for_negative_directions() {
    for p in 0..=2usize {
        let mut s = setup(800 + p as u64, 24 * (p + 1));
        let ev = Evaluator::new(&s.conn);
        let batch = elements(&ev, &one_sided(&mut s.rng, 6, -1));
        let cal = calibrate_phi(&ev, p, &batch).unwrap();
        let expected = -(2f64.powi(2 * p as i32 + 1)) / (p as f64 + 1.0);
        assert!(
            (cal.kappa - expected).abs() < 1e-9,
            "p={p}: kappa {}",
            cal.kappa
        );
        for x in elements(&ev, &one_sided(&mut s.rng, 3, -1)) {
            let r = phi_gradient_residual(&ev, &cal, &x).unwrap();
            assert!(r < 1e-9);
        }
        // mixed directions are outside the claim; just record that they differ
        let mixed = elements(&ev, &loops(&mut s.rng, 1));
        let _ = phi_gradient_residual(&ev, &cal, &mixed[0]).unwrap();
    }
    let w = ModeWindow::new(24, FIBER).unwrap();
    let ev = Evaluator::new(&GrassmannConnection::zero(w));
    let batch = elements(&ev, &one_sided(&mut setup(900, 24).rng, 3, -1));
    assert!(matches!(
        calibrate_phi(&ev, 0, &batch),
        Err(CocycleError::EmptyCalibration)
    ));
    let phi = PhiPotential { p: 0, kappa: -2.0 };
    assert_eq!(ev.value(&phi, &[]).unwrap(), c(0.0));
}

#[test]
fn value_records() {
    let mut s = setup(1000, 24);
    let ev = Evaluator::new(&s.conn);
    let xs = elements(&ev, &loops(&mut s.rng, 2));
    let record = ev.record(&CocycleP { p: 1 }, &xs).unwrap();
    assert_eq!(record.name, "c_1");
    assert_eq!(record.arguments, vec![xs[0].id(), xs[1].id()]);
    assert_eq!(record.radius, 24);
    assert_eq!(record.interior_margin, 14);
    let _ = BlockOperator::zeros(ev.window());
    let _ = CMat::zeros(1, 1);
}
