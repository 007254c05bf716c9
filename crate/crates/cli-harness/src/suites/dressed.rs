use cocycle_calculus::{grassmann_point, GrassmannConnection};
use fourier_core::ModeWindow;
use wzw_super::{
    build_fock, dressed_vacuum_check, dressing_radius, BosonicRealization, Currents,
    DressedAlgebra, Dressing, LoopBasis, Mode, StructureConstants,
};

use super::{boxed, mixed_unitary_loop, stream};
use crate::report::{Measured, Relation, Runner};

const FIBER: usize = 2;
const TABLE_TOL: f64 = 1e-9;
/// Dressed orders checked; each needs a wider window than the last.
pub const DRESSED_ORDERS: [usize; 2] = [0, 1];

pub(super) fn run(r: &mut Runner) {
    let cfg = r.config().clone();
    let band = cfg.dressed_bandwidth;
    let inputs = format!("N_f={};L={};Lambda={band}", cfg.nf, cfg.dressed_level);
    let setup = build_fock(
        &StructureConstants::su2(),
        cfg.nf,
        BosonicRealization::TrivialK0,
    )
    .and_then(|fock| Currents::build(&fock).map(|c| (fock, c)))
    .map_err(|e| e.to_string());
    let basis = LoopBasis::su2();
    let top = Dressing::Order(DRESSED_ORDERS[DRESSED_ORDERS.len() - 1]);
    let radius = dressing_radius(top, cfg.nf, band);
    let conn = (|| -> Result<GrassmannConnection, Box<dyn std::error::Error>> {
        let g = mixed_unitary_loop(&mut stream(cfg.seed, 80), FIBER, band);
        Ok(grassmann_point(&g, ModeWindow::new(radius, FIBER)?)?)
    })()
    .map_err(|e| e.to_string());

    let table_for = |dressing: Dressing, conn: &GrassmannConnection| {
        let (fock, currents) = setup.as_ref().map_err(|e| boxed(e.clone()))?;
        let alg = DressedAlgebra::new(
            fock,
            currents,
            conn,
            &basis,
            dressing,
            cfg.dressed_level,
            cfg.seed,
        )?;
        Ok::<_, Box<dyn std::error::Error>>(alg.bracket_table()?)
    };

    for p in DRESSED_ORDERS {
        let params = format!("p={p}");
        let table = conn
            .as_ref()
            .map_err(|e| boxed(e.clone()))
            .and_then(|c| table_for(Dressing::Order(p), c))
            .map_err(|e| e.to_string());
        match &table {
            Ok(t) => {
                // The smooth-to-dressed cocycle ratio rides along with [S, S]; it is 2 only
                // when B has a single orientation.
                for entry in &t.entries {
                    let observed = (entry.id == "bracket_s_s").then_some(t.smooth_ratio);
                    r.check(
                        table_family(entry.id),
                        &params,
                        &inputs,
                        TABLE_TOL,
                        Relation::AtMost,
                        || {
                            Ok(Measured {
                                residual: entry.residual,
                                observed,
                            })
                        },
                    );
                }
            }
            Err(e) => r.check(
                "dressed.table",
                &params,
                &inputs,
                TABLE_TOL,
                Relation::AtMost,
                || Err(boxed(e.clone())),
            ),
        }
        r.check(
            "dressed.vacuum",
            &params,
            &inputs,
            1e-8,
            Relation::AtMost,
            || {
                let (fock, currents) = setup.as_ref().map_err(|e| boxed(e.clone()))?;
                let conn = conn.as_ref().map_err(|e| boxed(e.clone()))?;
                let report = dressed_vacuum_check(fock, currents, conn, &basis, p, cfg.seed)?;
                if report.annihilation != 0.0 {
                    return Err(boxed(format!(
                        "free vacuum not annihilated: {}",
                        report.annihilation
                    )));
                }
                Ok(Measured::with_observed(
                    report.residual,
                    report.undressed_defect,
                ))
            },
        );
    }

    // At B = 0 the undressed table is the smooth central extension with the audited constant 4.
    let zero = ModeWindow::new(dressing_radius(Dressing::Undressed, cfg.nf, 0), FIBER)
        .map(GrassmannConnection::zero);
    let zero_table = zero
        .map_err(|e| boxed(e.to_string()))
        .and_then(|c| table_for(Dressing::Undressed, &c))
        .map_err(|e| e.to_string());
    r.check(
        "dressed.zero_b_table",
        "",
        &inputs,
        TABLE_TOL,
        Relation::AtMost,
        || {
            Ok(Measured::residual(
                zero_table
                    .as_ref()
                    .map_err(|e| boxed(e.clone()))?
                    .max_residual(),
            ))
        },
    );
    r.check(
        "dressed.zero_b_smooth_constant",
        "",
        &inputs,
        1e-12,
        Relation::AtMost,
        || {
            let t = zero_table.as_ref().map_err(|e| boxed(e.clone()))?;
            Ok(Measured::with_observed(
                (t.smooth_ratio - 4.0).abs(),
                t.smooth_ratio,
            ))
        },
    );
    r.check(
        "dressed.zero_b_dressed_cocycle",
        "",
        &inputs,
        1e-14,
        Relation::AtMost,
        || {
            let (fock, currents) = setup.as_ref().map_err(|e| boxed(e.clone()))?;
            let dressing = Dressing::Order(0);
            let conn = GrassmannConnection::zero(ModeWindow::new(
                dressing_radius(dressing, cfg.nf, 0),
                FIBER,
            )?);
            let alg = DressedAlgebra::new(
                fock,
                currents,
                &conn,
                &basis,
                dressing,
                cfg.dressed_level,
                cfg.seed,
            )?;
            let value = alg.cocycle_value(Mode::new(0, 1), Mode::new(0, -1))?;
            Ok(Measured::residual(value.norm()))
        },
    );
}

fn table_family(entry: &str) -> &'static str {
    match entry {
        "anticommutator_psi_psi" => "dressed.anticommutator_psi_psi",
        "bracket_s_s" => "dressed.bracket_s_s",
        "bracket_s_psi" => "dressed.bracket_s_psi",
        "anticommutator_psi_q" => "dressed.anticommutator_psi_q",
        "bracket_s_q" => "dressed.bracket_s_q",
        "bracket_psi_h" => "dressed.bracket_psi_h",
        "bracket_h_s" => "dressed.bracket_h_s",
        "bracket_s_f" => "dressed.bracket_s_f",
        "bracket_q_f" => "dressed.bracket_q_f",
        "bracket_h_f" => "dressed.bracket_h_f",
        "square_q_h" => "dressed.square_q_h",
        "bracket_q_h" => "dressed.bracket_q_h",
        _ => "dressed.table",
    }
}
