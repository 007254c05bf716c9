use fourier_core::Complex64;

use crate::cochain::{C0Form, Coboundary, CocycleP, EtaP, PhiPotential, C0};
use crate::evaluator::Evaluator;
use crate::words::LieElement;
use crate::{CocycleError, Result};

/// Residuals of the recursion between consecutive cocycles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecursionReport {
    /// `|c_{p+1} - c_p + delta(eta_p)|` with the standard prefactors.
    pub literal: f64,
    /// `|c^_{p+1} - c^_p + delta(eta^_p)|` with `c^_p = 2^{-4p} c_p`, `eta^_p = 2^{-(2p+1)} Tr(eps B^{2p+1} dX)`.
    pub normalized: f64,
    /// `|c_{p+1} - 16 c_p + 4 delta(eta_p)|`.
    pub rescaled_standard: f64,
    /// `max(|c^_{p+1}|, |c^_p|)`, the magnitude the normalized residual is judged against.
    pub scale: f64,
}

pub fn recursion_check(
    ev: &Evaluator,
    x: &LieElement,
    y: &LieElement,
    p: usize,
) -> Result<RecursionReport> {
    let args = [x.clone(), y.clone()];
    let c_next = ev.value(&CocycleP { p: p + 1 }, &args)?;
    let c_here = ev.value(&CocycleP { p }, &args)?;
    let delta_eta = ev.value(&Coboundary(EtaP::standard(p)), &args)?;
    let delta_eta_hat = ev.value(&Coboundary(EtaP::normalized(p)), &args)?;
    let hat = |c: Complex64, q: usize| c * 2f64.powi(-4 * q as i32);
    Ok(RecursionReport {
        literal: (c_next - c_here + delta_eta).norm(),
        normalized: (hat(c_next, p + 1) - hat(c_here, p) + delta_eta_hat).norm(),
        rescaled_standard: (c_next - c_here * 16.0 + delta_eta * 4.0).norm(),
        scale: hat(c_next, p + 1).norm().max(hat(c_here, p).norm()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhiCalibration {
    pub p: usize,
    pub kappa: f64,
    /// Largest `|eta_p(X) - L_X Phi|` over the calibration batch.
    pub spread: f64,
}

impl PhiCalibration {
    pub fn potential(&self) -> PhiPotential {
        PhiPotential {
            p: self.p,
            kappa: self.kappa,
        }
    }
}

pub const PHI_SPREAD_BOUND: f64 = 1e-8;

/// One-parameter least-squares fit of `kappa` in `eta_p(X) = kappa L_X Tr(eps B^{2p+1})`
/// over a batch of directions.
pub fn calibrate_phi(ev: &Evaluator, p: usize, batch: &[LieElement]) -> Result<PhiCalibration> {
    let unit = Coboundary(PhiPotential { p, kappa: 1.0 });
    let mut pairs = Vec::with_capacity(batch.len());
    for x in batch {
        let args = [x.clone()];
        pairs.push((
            ev.value(&unit, &args)?,
            ev.value(&EtaP::standard(p), &args)?,
        ));
    }
    let denom: f64 = pairs.iter().map(|(a, _)| a.norm_sqr()).sum();
    if pairs.is_empty() || denom == 0.0 {
        return Err(CocycleError::EmptyCalibration);
    }
    let kappa = pairs.iter().map(|(a, b)| (a.conj() * b).re).sum::<f64>() / denom;
    let spread = pairs
        .iter()
        .map(|(a, b)| (b - a * kappa).norm())
        .fold(0.0, f64::max);
    if spread > PHI_SPREAD_BOUND {
        return Err(CocycleError::CalibrationFailed {
            spread,
            bound: PHI_SPREAD_BOUND,
        });
    }
    Ok(PhiCalibration { p, kappa, spread })
}

/// `|eta_p(X) - L_X Phi(B)|`.
pub fn phi_gradient_residual(
    ev: &Evaluator,
    calibration: &PhiCalibration,
    x: &LieElement,
) -> Result<f64> {
    let args = [x.clone()];
    let eta = ev.value(&EtaP::standard(calibration.p), &args)?;
    let grad = ev.value(&Coboundary(calibration.potential()), &args)?;
    Ok((eta - grad).norm())
}

/// Measured constants between the expressions of the basic cocycle.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizationAudit {
    /// `(1/8) Tr(eps [dX, dY]) / ((1/2) Tr(X dY))`.
    pub bracket_over_smooth: RatioStats,
    /// Block form over the smooth form.
    pub blocks_over_smooth: RatioStats,
    /// Closed-form `c_0(X, Y; B)` over the smooth form.
    pub closed_over_smooth: RatioStats,
    pub pairs_used: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioStats {
    pub mean: f64,
    pub spread: f64,
}

fn stats(values: &[Complex64]) -> RatioStats {
    let n = values.len().max(1) as f64;
    let mean = values.iter().map(|v| v.re).sum::<f64>() / n;
    let spread = values.iter().map(|v| (v - mean).norm()).fold(0.0, f64::max);
    RatioStats { mean, spread }
}

/// Pairs whose smooth value is below `1e-8` carry no ratio information and are skipped.
pub fn normalization_audit(
    ev: &Evaluator,
    pairs: &[(LieElement, LieElement)],
) -> Result<NormalizationAudit> {
    let mut bracket = Vec::new();
    let mut blocks = Vec::new();
    let mut closed = Vec::new();
    for (x, y) in pairs {
        let args = [x.clone(), y.clone()];
        let smooth = ev.value(
            &C0 {
                form: C0Form::Smooth,
            },
            &args,
        )?;
        if smooth.norm() < 1e-8 {
            continue;
        }
        bracket.push(
            ev.value(
                &C0 {
                    form: C0Form::EpsilonBracket,
                },
                &args,
            )? / smooth,
        );
        blocks.push(
            ev.value(
                &C0 {
                    form: C0Form::Blocks,
                },
                &args,
            )? / smooth,
        );
        closed.push(ev.value(&CocycleP { p: 0 }, &args)? / smooth);
    }
    if bracket.is_empty() {
        return Err(CocycleError::EmptyCalibration);
    }
    Ok(NormalizationAudit {
        bracket_over_smooth: stats(&bracket),
        blocks_over_smooth: stats(&blocks),
        closed_over_smooth: stats(&closed),
        pairs_used: bracket.len(),
    })
}
