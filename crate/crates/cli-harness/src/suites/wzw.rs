use fourier_core::sample::gaussian_loop;
use fourier_core::Complex64;
use wzw_super::{
    build_fock, coupled_hamiltonian, coupled_supercharge, equivariance_rhs, hamiltonian,
    supercharge, BosonicRealization, CouplingData, Currents, FockOperator, FockSpace,
    GaugePotential, Mode, StructureConstants,
};

use super::stream;
use crate::config::GroupChoice;
use crate::report::{Measured, Relation, Runner};

const POTENTIALS: usize = 5;
const POTENTIAL_SCALE: f64 = 0.3;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Gell-Mann structure constants rescaled so that the squares sum to the
/// dimension, the normalization of `su2()`.
pub fn su3() -> StructureConstants {
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
    let casimir: f64 = f.iter().map(|v| v * v).sum();
    let scale = (8.0 / casimir).sqrt();
    StructureConstants::custom("su3", 8, f.iter().map(|v| v * scale).collect())
        .expect("Gell-Mann constants satisfy Jacobi")
}

pub fn structure(group: GroupChoice) -> StructureConstants {
    match group {
        GroupChoice::Su2 => StructureConstants::su2(),
        GroupChoice::Su3 => su3(),
    }
}

fn car_defect(fock: &FockSpace) -> Result<f64, Box<dyn std::error::Error>> {
    let id = FockOperator::identity(fock.dim());
    let zero = FockOperator::zero(fock.dim());
    let modes: Vec<Mode> = fock.modes().collect();
    let mut worst: f64 = 0.0;
    for &x in &modes {
        let px = fock.psi(x)?;
        worst = worst.max(
            px.adjoint()
                .sub(fock.psi(Mode::new(x.color, -x.index))?)
                .max_abs(),
        );
        for &y in &modes {
            let anti = px.anticommutator(fock.psi(y)?);
            let expected = if x.color == y.color && x.index == -y.index {
                id.scale(re(2.0))
            } else {
                zero.clone()
            };
            worst = worst.max(anti.sub(&expected).max_abs());
        }
    }
    Ok(worst)
}

pub(super) fn run(r: &mut Runner) {
    let cfg = r.config().clone();
    let sc = structure(cfg.group);
    let inputs = format!("group={:?};N_f={};L={}", cfg.group, cfg.nf, cfg.level);
    let built = build_fock(&sc, cfg.nf, BosonicRealization::TrivialK0)
        .and_then(|fock| Currents::build(&fock).map(|currents| (fock, currents)))
        .map_err(|e| e.to_string());
    let space = || {
        built
            .as_ref()
            .map_err(|e| Box::<dyn std::error::Error>::from(e.clone()))
    };

    r.check("wzw.car", "", &inputs, 1e-13, Relation::AtMost, || {
        Ok(Measured::residual(car_defect(&space()?.0)?))
    });

    let k_bar = sc.h_dual() / 4.0;
    r.check(
        "wzw.central_term",
        "",
        &inputs,
        1e-10,
        Relation::AtMost,
        || {
            let (fock, currents) = space()?;
            let comm = currents
                .k(Mode::new(0, 1))?
                .commutator(currents.k(Mode::new(0, -1))?);
            let value = comm.entry(fock.vacuum(), fock.vacuum()).re;
            Ok(Measured::with_observed((value - k_bar).abs(), value))
        },
    );

    r.check("wzw.square", "", &inputs, 1e-10, Relation::AtMost, || {
        let (fock, currents) = space()?;
        let q = supercharge(fock, currents)?;
        let h = hamiltonian(fock, currents, &CouplingData::for_space(fock))?;
        Ok(Measured::residual(
            q.mul(&q)
                .sub(&h)
                .max_abs_on_columns(&fock.safe_mask(cfg.level)),
        ))
    });

    let expected_energy = sc.dim() as f64 / 24.0;
    r.check(
        "wzw.vacuum_energy",
        "",
        &inputs,
        1e-10,
        Relation::AtMost,
        || {
            let (fock, currents) = space()?;
            let q = supercharge(fock, currents)?;
            let value = q.mul(&q).entry(fock.vacuum(), fock.vacuum()).re;
            Ok(Measured::with_observed(
                (value - expected_energy).abs(),
                value,
            ))
        },
    );

    let potentials = || -> Result<Vec<CouplingData>, Box<dyn std::error::Error>> {
        let (fock, _) = space()?;
        let mut rng = stream(cfg.seed, 70);
        (0..POTENTIALS)
            .map(|_| {
                let comps = (0..sc.dim())
                    .map(|_| gaussian_loop(&mut rng, 1, 1, true).scale(re(POTENTIAL_SCALE)))
                    .collect();
                Ok(CouplingData::for_space(fock).with_potential(GaugePotential::new(comps)?))
            })
            .collect()
    };
    let inputs_a = format!("{inputs};potentials={POTENTIALS};scale={POTENTIAL_SCALE}");
    r.check(
        "wzw.equivariance",
        "",
        &inputs_a,
        1e-10,
        Relation::AtMost,
        || {
            let (fock, currents) = space()?;
            let mut worst: f64 = 0.0;
            for coupling in potentials()? {
                let qa = coupled_supercharge(fock, currents, &coupling)?;
                for n in [-1i64, 0, 1]
                    .into_iter()
                    .filter(|n| n.unsigned_abs() < cfg.nf as u64)
                {
                    // a mode of size |n| needs |n| + 1 levels of headroom
                    let level = cfg.level.min(cfg.nf - 1 - n.unsigned_abs() as usize);
                    for a in 0..sc.dim() {
                        let mode = Mode::new(a, n);
                        let lhs = currents.s(mode)?.commutator(&qa);
                        let rhs = equivariance_rhs(fock, &coupling, mode)?;
                        worst = worst.max(lhs.sub(&rhs).max_abs_on_columns(&fock.safe_mask(level)));
                    }
                }
            }
            Ok(Measured::residual(worst))
        },
    );
    r.check(
        "wzw.coupled_square",
        "",
        &inputs_a,
        1e-10,
        Relation::AtMost,
        || {
            let (fock, currents) = space()?;
            let mut worst: f64 = 0.0;
            for coupling in potentials()? {
                let qa = coupled_supercharge(fock, currents, &coupling)?;
                let ha = coupled_hamiltonian(fock, currents, &coupling)?;
                worst = worst.max(
                    qa.mul(&qa)
                        .sub(&ha)
                        .max_abs_on_columns(&fock.safe_mask(cfg.level)),
                );
            }
            Ok(Measured::residual(worst))
        },
    );
}
