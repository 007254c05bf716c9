use fourier_core::sample::{gaussian_loop, rng_from_seed};
use fourier_core::Complex64;
use wzw_super::*;

const TIGHT: f64 = 1e-13;
const SAFE_TOL: f64 = 1e-10;

fn su2_space(cutoff: usize) -> FockSpace {
    build_fock(
        &StructureConstants::su2(),
        cutoff,
        BosonicRealization::TrivialK0,
    )
    .unwrap()
}

fn su3() -> StructureConstants {
    // Gell-Mann f^{abc}; rescaled so the Casimir sum is -8
    let mut f = vec![0.0; 512];
    let h = 3f64.sqrt() / 2.0;
    let entries = [
        (0, 1, 2, 1.0),
        (0, 3, 6, 0.5),
        (0, 4, 5, -0.5),
        (1, 3, 5, 0.5),
        (1, 4, 6, 0.5),
        (2, 3, 4, 0.5),
        (2, 5, 6, -0.5),
        (3, 4, 7, h),
        (5, 6, 7, h),
    ];
    for (a, b, c, v) in entries {
        for (x, y, z, s) in [
            (a, b, c, 1.0),
            (b, c, a, 1.0),
            (c, a, b, 1.0),
            (b, a, c, -1.0),
            (a, c, b, -1.0),
            (c, b, a, -1.0),
        ] {
            f[(x * 8 + y) * 8 + z] = s * v;
        }
    }
    let casimir: f64 = -f.iter().map(|v| v * v).sum::<f64>();
    let scale = (8.0 / -casimir).sqrt();
    StructureConstants::custom("su3", 8, f.iter().map(|v| v * scale).collect()).unwrap()
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn structure_constants_invariants() {
    let sc = StructureConstants::su2();
    assert!((sc.get(0, 1, 2) - 0.5f64.sqrt()).abs() < 1e-15);
    assert!((sc.casimir() + 3.0).abs() < 1e-14);
    assert!(sc.jacobi_defect() < 1e-15);
    let su3 = su3();
    assert!((su3.h_dual() - 2.0).abs() < 1e-12);

    let mut broken = vec![0.0; 125];
    for (a, b, c) in [(0, 1, 2), (2, 3, 4)] {
        for (x, y, z, s) in [
            (a, b, c, 1.0),
            (b, c, a, 1.0),
            (c, a, b, 1.0),
            (b, a, c, -1.0),
            (a, c, b, -1.0),
            (c, b, a, -1.0),
        ] {
            broken[(x * 5 + y) * 5 + z] = s;
        }
    }
    assert!(matches!(
        StructureConstants::custom("broken", 5, broken),
        Err(WzwError::JacobiViolated { .. })
    ));
    let mut asym = vec![0.0; 27];
    asym[5] = 1.0;
    assert!(matches!(
        StructureConstants::custom("asym", 3, asym),
        Err(WzwError::NotAntisymmetric { .. })
    ));
}

#[test]
fn dimensions_and_capacity() {
    assert_eq!(su2_space(1).dim(), 16);
    assert_eq!(su2_space(2).dim(), 128);
    assert_eq!(su2_space(3).dim(), 1024);
    let err = build_fock(&StructureConstants::su2(), 7, BosonicRealization::TrivialK0).unwrap_err();
    assert!(matches!(err, WzwError::CapacityExceeded { log2: 22, .. }));
    assert!(matches!(
        build_fock(&StructureConstants::su2(), 0, BosonicRealization::TrivialK0),
        Err(WzwError::EmptyCutoff)
    ));
    assert_eq!(
        build_fock(&su3(), 1, BosonicRealization::TrivialK0)
            .unwrap()
            .dim(),
        4096
    );
}

#[test]
fn car_relations_are_exact() {
    for fock in [
        su2_space(2),
        build_fock(&su3(), 1, BosonicRealization::TrivialK0).unwrap(),
    ] {
        let id = FockOperator::identity(fock.dim());
        let modes: Vec<Mode> = fock.modes().collect();
        for &x in &modes {
            let px = fock.psi(x).unwrap();
            assert!(
                px.adjoint()
                    .sub(fock.psi(Mode::new(x.color, -x.index)).unwrap())
                    .max_abs()
                    < TIGHT
            );
            for &y in &modes {
                let anti = px.anticommutator(fock.psi(y).unwrap());
                let expected = if x.color == y.color && x.index == -y.index {
                    id.scale(re(2.0))
                } else {
                    FockOperator::zero(fock.dim())
                };
                assert!(anti.sub(&expected).max_abs() < TIGHT, "{x:?} {y:?}");
            }
        }
    }
    let fock = su2_space(2);
    let vac = fock.vacuum();
    for mode in fock.modes().filter(|m| m.index < 0) {
        let psi = fock.psi(mode).unwrap();
        assert!((0..fock.dim()).all(|r| psi.entry(r, vac) == Complex64::default()));
    }
    assert!(matches!(
        fock.psi(Mode::new(0, 3)),
        Err(WzwError::ModeOutOfRange { .. })
    ));
}

#[test]
fn normal_ordering_moves_creators_left() {
    let p = normal_order_pair(Mode::new(0, -2), Mode::new(1, 2));
    assert_eq!(
        (p.sign, p.left, p.right),
        (-1.0, Mode::new(1, 2), Mode::new(0, -2))
    );
    let q = normal_order_pair(Mode::new(0, 2), Mode::new(1, -2));
    assert_eq!(
        (q.sign, q.left, q.right),
        (1.0, Mode::new(0, 2), Mode::new(1, -2))
    );
    let z = normal_order_pair(Mode::new(0, 0), Mode::new(1, 0));
    assert_eq!((z.sign, z.left), (1.0, Mode::new(0, 0)));
    let fock = su2_space(1);
    let ordered = fock
        .normal_ordered(Mode::new(0, -1), Mode::new(0, 1))
        .unwrap();
    // :psi_{-1} psi_1: annihilates the vacuum
    assert!((0..fock.dim()).all(|r| ordered.entry(r, fock.vacuum()).norm() < TIGHT));
}

#[test]
fn current_algebra_on_safe_subspace() {
    let fock = su2_space(3);
    let level = 2;
    let mask = fock.safe_mask(level);
    let currents = Currents::build(&fock).unwrap();
    let sc = fock.structure();
    let kbar = sc.h_dual() / 4.0;
    for a in 0..3 {
        for b in 0..3 {
            for (n, m) in [(0i64, 0i64), (1, -1), (-1, 1), (1, 0), (0, -1)] {
                fock.check_budget((n.abs() + m.abs()) as usize, 0).unwrap();
                let lhs = currents
                    .k(Mode::new(a, n))
                    .unwrap()
                    .commutator(currents.k(Mode::new(b, m)).unwrap());
                let mut rhs = FockOperator::zero(fock.dim());
                for c in 0..3 {
                    rhs = rhs.add(
                        &currents
                            .k(Mode::new(c, n + m))
                            .unwrap()
                            .scale(re(sc.get(a, b, c))),
                    );
                }
                if a == b && n == -m {
                    rhs = rhs.add(&FockOperator::identity(fock.dim()).scale(re(kbar * n as f64)));
                }
                assert!(
                    lhs.sub(&rhs).max_abs_on_columns(&mask) < SAFE_TOL,
                    "{a} {b} {n} {m}"
                );
            }
        }
        let k = currents.k(Mode::new(a, 1)).unwrap();
        let adj = currents.k(Mode::new(a, -1)).unwrap().scale(re(-1.0));
        assert!(k.adjoint().sub(&adj).max_abs() < SAFE_TOL);
    }
    let central = currents
        .k(Mode::new(0, 1))
        .unwrap()
        .commutator(currents.k(Mode::new(0, -1)).unwrap());
    assert!((central.entry(0, 0) - re(0.5)).norm() < SAFE_TOL);
    assert!(fock.check_budget(1, 1).is_ok());
    assert!(matches!(
        fock.check_budget(2, 1),
        Err(WzwError::BudgetExceeded { required: 4, .. })
    ));
    assert_eq!(currents.t(Mode::new(0, 1)).unwrap().nnz(), 0);
}

#[test]
fn supercharge_squares_to_hamiltonian() {
    let fock = su2_space(3);
    let mask = fock.safe_mask(2);
    let currents = Currents::build(&fock).unwrap();
    let coupling = CouplingData::for_space(&fock);
    assert_eq!((coupling.level, coupling.k_bar), (0.0, 0.5));
    let q = supercharge(&fock, &currents).unwrap();
    let h = hamiltonian(&fock, &currents, &coupling).unwrap();
    let q2 = q.mul(&q);
    assert!(q.adjoint().sub(&q).max_abs() < SAFE_TOL);
    assert!(h.adjoint().sub(&h).max_abs() < SAFE_TOL);
    assert!((q2.entry(0, 0) - re(0.125)).norm() < SAFE_TOL);
    assert!(q2.sub(&h).max_abs_on_columns(&mask) < SAFE_TOL);
    assert!(q.commutator(&h).max_abs_on_columns(&mask) < SAFE_TOL);
}

#[test]
fn minimal_coupling_identities() {
    let fock = su2_space(3);
    let mask = fock.safe_mask(2);
    let currents = Currents::build(&fock).unwrap();
    let base = CouplingData::for_space(&fock);
    let q = supercharge(&fock, &currents).unwrap();
    let zero = base.clone().with_potential(GaugePotential::zero(3));
    assert!(
        coupled_supercharge(&fock, &currents, &zero)
            .unwrap()
            .sub(&q)
            .max_abs()
            == 0.0
    );

    let mut rng = rng_from_seed(11);
    for _ in 0..2 {
        let comps = (0..3)
            .map(|_| gaussian_loop(&mut rng, 1, 1, true).scale(re(0.3)))
            .collect();
        let coupling = base
            .clone()
            .with_potential(GaugePotential::new(comps).unwrap());
        let qa = coupled_supercharge(&fock, &currents, &coupling).unwrap();
        let ha = coupled_hamiltonian(&fock, &currents, &coupling).unwrap();
        assert!(qa.adjoint().sub(&qa).max_abs() < SAFE_TOL);
        assert!(ha.adjoint().sub(&ha).max_abs() < SAFE_TOL);
        assert!(qa.mul(&qa).sub(&ha).max_abs_on_columns(&mask) < SAFE_TOL);
        for mode in [Mode::new(0, 0), Mode::new(1, 1), Mode::new(2, -1)] {
            let lhs = currents.s(mode).unwrap().commutator(&qa);
            let rhs = equivariance_rhs(&fock, &coupling, mode).unwrap();
            assert!(
                lhs.sub(&rhs).max_abs_on_columns(&fock.safe_mask(1)) < SAFE_TOL,
                "{mode:?}"
            );
        }
    }
    let bad = GaugePotential::new(vec![fourier_core::LoopElement::scalar(&[(1, re(1.0))]); 3]);
    assert!(matches!(bad, Err(WzwError::PotentialNotReal { .. })));
}

#[test]
fn second_fermion_realization() {
    let fock = build_fock(
        &StructureConstants::su2(),
        2,
        BosonicRealization::SecondFermion,
    )
    .unwrap();
    assert_eq!(fock.dim(), 16384);
    let mask = fock.safe_mask(1);
    let currents = Currents::build(&fock).unwrap();
    let coupling = CouplingData::for_space(&fock);
    assert_eq!((coupling.level, coupling.k_bar), (2.0, 1.0));
    let tt = currents
        .t(Mode::new(0, 1))
        .unwrap()
        .commutator(currents.t(Mode::new(0, -1)).unwrap());
    assert!((tt.entry(0, 0) - re(0.5)).norm() < SAFE_TOL);
    let ss = currents
        .s(Mode::new(0, 1))
        .unwrap()
        .commutator(currents.s(Mode::new(0, -1)).unwrap());
    let rhs = FockOperator::identity(fock.dim()).scale(re(coupling.k_bar));
    assert!(ss.sub(&rhs).max_abs_on_columns(&fock.safe_mask(0)) < SAFE_TOL);
    let q = supercharge(&fock, &currents).unwrap();
    let h = hamiltonian(&fock, &currents, &coupling).unwrap();
    let q2 = q.mul(&q);
    assert!(q2.sub(&h).max_abs_on_columns(&mask) < SAFE_TOL);
    assert!((q2.entry(0, 0) - re(0.5)).norm() < SAFE_TOL);
}
