use std::fmt::Write as _;
use std::str::FromStr;

use fourier_core::sample::gaussian_loop;
use fourier_core::{Complex64, LoopElement, ModeWindow};
use operator_analysis::{
    column_norm_law, commutator_norm, divergence_witness, dixmier_scan, epsilon_commutator_law,
    sobolev_critical_loop, tameness_probe,
};

use crate::config::RunConfig;
use crate::error::HarnessError;
use crate::suites::stream;
use crate::Result;

const CRITICAL_DELTA: f64 = 0.05;
const WITNESS_BAND: usize = 64;
const LAW_LOOPS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// Window radius.
    Window,
    /// Fractional order.
    Order,
    /// Half Schatten index.
    SchattenP,
    /// Loop bandwidth.
    Bandwidth,
    /// Dixmier cutoff.
    Cutoff,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::Window => "K",
            Axis::Order => "q",
            Axis::SchattenP => "p",
            Axis::Bandwidth => "Lambda",
            Axis::Cutoff => "N",
        }
    }
}

impl FromStr for Axis {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "K" => Ok(Axis::Window),
            "q" => Ok(Axis::Order),
            "p" => Ok(Axis::SchattenP),
            "Lambda" => Ok(Axis::Bandwidth),
            "N" => Ok(Axis::Cutoff),
            _ => Err(HarnessError::UnknownAxis(s.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub axis: Axis,
    pub value: f64,
    pub observable: String,
    pub result: f64,
}

fn positive_integer(axis: Axis, v: f64) -> Result<usize> {
    if v >= 1.0 && v.fract() == 0.0 {
        Ok(v as usize)
    } else {
        Err(HarnessError::Budget(format!(
            "{} must be a positive integer, got {v}",
            axis.name()
        )))
    }
}

fn failed(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Budget(format!("scan point failed: {e}"))
}

/// Long-format sweep of one axis; the other parameters come from `cfg`.
pub fn scan(cfg: &RunConfig, axis: Axis, values: &[f64]) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    let mut push = |value: f64, observable: String, result: f64| {
        rows.push(ScanRow {
            axis,
            value,
            observable,
            result,
        })
    };
    match axis {
        Axis::Window => {
            let radii: Vec<usize> = values
                .iter()
                .map(|&v| positive_integer(axis, v))
                .collect::<Result<_>>()?;
            let band = radii.iter().copied().max().unwrap_or(1);
            let e = LoopElement::scalar(&[(1, Complex64::new(1.0, 0.0))]);
            for &q in &cfg.q {
                let rough = sobolev_critical_loop(q, CRITICAL_DELTA, band);
                let windows: Vec<ModeWindow> = radii
                    .iter()
                    .map(|&k| ModeWindow::new(k, 1))
                    .collect::<std::result::Result<_, _>>()
                    .map_err(failed)?;
                let second = tameness_probe(q, 2, &rough, &windows).map_err(failed)?;
                for ((&k, w), s) in radii.iter().zip(&windows).zip(second) {
                    push(
                        k as f64,
                        format!("commutator_norm[q={q}]"),
                        commutator_norm(q, &e, *w).map_err(failed)?,
                    );
                    push(k as f64, format!("second_commutator[q={q}]"), s);
                }
            }
        }
        Axis::Order => {
            let e = LoopElement::scalar(&[(1, Complex64::new(1.0, 0.0))]);
            let window = ModeWindow::new(cfg.window, 1).map_err(failed)?;
            for &q in values {
                if !(q > 0.0 && q <= 1.0) {
                    return Err(HarnessError::Budget(format!(
                        "q must lie in (0, 1], got {q}"
                    )));
                }
                push(
                    q,
                    format!("commutator_norm[K={}]", cfg.window),
                    commutator_norm(q, &e, window).map_err(failed)?,
                );
                push(
                    q,
                    format!("divergence_witness[Lambda={WITNESS_BAND}]"),
                    divergence_witness(q, WITNESS_BAND).map_err(failed)?,
                );
            }
        }
        Axis::SchattenP => {
            let mut rng = stream(cfg.seed, 1);
            let loops: Vec<LoopElement> = (0..LAW_LOOPS)
                .map(|i| gaussian_loop(&mut rng, 1 + i % 2, 1 + i % 4, false))
                .collect();
            for &p in values {
                if p.is_nan() || p < 1.0 {
                    return Err(HarnessError::Budget(format!(
                        "p must be at least 1, got {p}"
                    )));
                }
                let (mut law, mut column) = (0.0f64, 0.0f64);
                for g in &loops {
                    let window = ModeWindow::new(2 * g.bandwidth(), g.fiber()).map_err(failed)?;
                    let cmp = epsilon_commutator_law(g, p, window).map_err(failed)?;
                    law = law.max(cmp.relative_error());
                    column = column.max((cmp.lhs - column_norm_law(g, p)).abs() / cmp.lhs.max(1.0));
                }
                push(p, "mode_sum_law_rel_error".into(), law);
                push(p, "column_law_rel_error".into(), column);
            }
        }
        Axis::Bandwidth => {
            for &v in values {
                let band = positive_integer(axis, v)?;
                for &q in &cfg.q {
                    push(
                        v,
                        format!("divergence_witness[q={q}]"),
                        divergence_witness(q, band).map_err(failed)?,
                    );
                }
            }
        }
        Axis::Cutoff => {
            for &v in values {
                let n = positive_integer(axis, v)? as u64;
                for &qp in &cfg.dixmier_qp {
                    let last = dixmier_scan(qp, 1.0, n)
                        .last()
                        .map(|pt| pt.average)
                        .ok_or_else(|| failed("empty scan"))?;
                    push(v, format!("dixmier_average[qp={qp}]"), last);
                }
            }
        }
    }
    Ok(rows)
}

pub fn rows_to_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("axis,value,observable,result\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{:e}",
            r.axis.name(),
            r.value,
            r.observable,
            r.result
        );
    }
    out
}
