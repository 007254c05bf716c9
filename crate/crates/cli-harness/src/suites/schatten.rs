use fourier_core::sample::gaussian_loop;
use fourier_core::{LoopElement, ModeWindow};
use operator_analysis::{
    block_decompose, column_norm_law, decay_exponent, divergence_witness, epsilon_commutator_law,
    offdiag_decay_unitary, singular_values_desc, up_retract,
};

use super::stream;
use crate::report::{Measured, Relation, Runner};

const LOOPS: usize = 20;
const RETRACTION_RADIUS: usize = 40;
const RETRACTION_SEEDS: usize = 5;

/// Seeded loops with bandwidth cycling through 1..=4 and fiber through 1..=2.
fn law_loops(seed: u64) -> Vec<LoopElement> {
    let mut rng = stream(seed, 1);
    (0..LOOPS)
        .map(|i| gaussian_loop(&mut rng, 1 + i % 2, 1 + i % 4, false))
        .collect()
}

pub(super) fn run(r: &mut Runner) {
    let cfg = r.config().clone();
    let loops = law_loops(cfg.seed);
    let inputs = format!("loops={LOOPS};bands=1..4;fibers=1..2");
    for &p in &cfg.schatten_p {
        let p = p as f64;
        r.check(
            "schatten.mode_sum_law",
            &format!("p={p}"),
            &inputs,
            1e-10,
            Relation::AtMost,
            || {
                let mut worst: f64 = 0.0;
                for g in &loops {
                    let window = ModeWindow::new(2 * g.bandwidth(), g.fiber())?;
                    worst = worst.max(epsilon_commutator_law(g, p, window)?.relative_error());
                }
                Ok(Measured::residual(worst))
            },
        );
        r.check(
            "schatten.column_law",
            &format!("p={p}"),
            &inputs,
            1e-10,
            Relation::AtMost,
            || {
                let mut worst: f64 = 0.0;
                for g in &loops {
                    let window = ModeWindow::new(2 * g.bandwidth(), g.fiber())?;
                    let lhs = epsilon_commutator_law(g, p, window)?.lhs;
                    worst = worst.max((lhs - column_norm_law(g, p)).abs() / lhs.max(1.0));
                }
                Ok(Measured::residual(worst))
            },
        );
    }

    // Increments of the truncated H^q sum over band doublings: growing below the
    // threshold, shrinking geometrically above it.
    for (q, relation, tol) in [(0.3, Relation::AtLeast, 1.0), (0.7, Relation::AtMost, 0.8)] {
        r.check(
            "schatten.divergence_witness",
            &format!("q={q}"),
            "bands=16,32,64",
            tol,
            relation,
            || {
                let v: Vec<f64> = [16, 32, 64]
                    .iter()
                    .map(|&b| divergence_witness(q, b))
                    .collect::<Result<_, _>>()?;
                Ok(Measured::with_observed((v[2] - v[1]) / (v[1] - v[0]), v[2]))
            },
        );
    }

    let window = ModeWindow::new(RETRACTION_RADIUS, 1).expect("positive radius");
    for (k, s) in [0.6, 1.0].into_iter().enumerate() {
        let inputs = format!("radius={RETRACTION_RADIUS};seeds={RETRACTION_SEEDS};s={s}");
        let mut rng = stream(cfg.seed, 10 + k as u64);
        let mut outcomes = Vec::new();
        for _ in 0..RETRACTION_SEEDS {
            let g = offdiag_decay_unitary(&mut rng, window, s, 0.5);
            outcomes.push((g.clone(), up_retract(&g, 1.0)));
        }
        r.check(
            "retraction.unitarity",
            &format!("s={s}"),
            &inputs,
            1e-9,
            Relation::AtMost,
            || {
                let mut worst: f64 = 0.0;
                for (_, out) in &outcomes {
                    let out = out.as_ref().map_err(|e| e.to_string())?;
                    worst = worst.max(out.unitarity_defect);
                }
                Ok(Measured::residual(worst))
            },
        );
        r.check(
            "retraction.decay_gain",
            &format!("s={s}"),
            &inputs,
            s - 0.5,
            Relation::AtLeast,
            || {
                let mut least = f64::INFINITY;
                for (g, out) in &outcomes {
                    let out = out.as_ref().map_err(|e| e.to_string())?;
                    let before =
                        decay_exponent(&singular_values_desc(&block_decompose(g).plus_minus))?;
                    let after = decay_exponent(&singular_values_desc(
                        &block_decompose(&out.retracted).plus_minus,
                    ))?;
                    least = least.min(after - before);
                }
                Ok(Measured::residual(least))
            },
        );
    }
}
