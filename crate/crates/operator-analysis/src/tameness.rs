use std::collections::BTreeMap;

use fourier_core::{
    diagonal_operator, make_loop, toeplitz_embed, CMat, Complex64, DiagonalKind, LoopElement,
    ModeWindow,
};

use crate::{AnalysisError, Result};

/// Operator norm of `[D^q, M_X]` on the window.
pub fn commutator_norm(q: f64, x: &LoopElement, window: ModeWindow) -> Result<f64> {
    let dq = diagonal_operator(DiagonalKind::FracDirac(q), window)?;
    let comm = dq.commutator(&toeplitz_embed(x, window)?)?;
    Ok(comm.matrix().singular_values().max())
}

/// `||ad^n_{|D|^q}(M_X) psi||` for `psi` the constant loop `e_0 (x) e_1`, one
/// value per window. Entries of `ad^n` are `(|k|^q - |m|^q)^n X_{k-m}`, so
/// only the column of `psi` is formed.
pub fn tameness_probe(q: f64, n: u32, x: &LoopElement, windows: &[ModeWindow]) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(AnalysisError::InvalidParameter(
            "commutator order must be at least 1".into(),
        ));
    }
    let symbol = DiagonalKind::AbsFracDirac(q);
    // rejects exponents outside the admissible range
    diagonal_operator(symbol, ModeWindow::new(1, 1)?)?;
    windows
        .iter()
        .map(|w| {
            if w.fiber() != x.fiber() {
                return Err(fourier_core::FourierError::DimensionMismatch {
                    expected: w.fiber(),
                    found: x.fiber(),
                }
                .into());
            }
            let sq: f64 = x
                .coeffs()
                .iter()
                .filter(|(&m, _)| w.contains(m))
                .map(|(&m, coeff)| {
                    let weight = (symbol.symbol(m) - symbol.symbol(0)).re.powi(n as i32);
                    weight * weight * coeff.column(0).norm_squared()
                })
                .sum();
            Ok(sq.sqrt())
        })
        .collect()
}

/// Scalar antihermitian loop `X_m = i |m|^{-(q + 1/2 + delta)}` for `1 <= |m| <= bandwidth`,
/// sitting just inside the Sobolev space `H^q`.
pub fn sobolev_critical_loop(q: f64, delta: f64, bandwidth: usize) -> LoopElement {
    let coeffs: BTreeMap<i64, CMat> = (1..=bandwidth as i64)
        .flat_map(|m| {
            let v = CMat::from_element(
                1,
                1,
                Complex64::new(0.0, (m as f64).powf(-(q + 0.5 + delta))),
            );
            [(m, v.clone()), (-m, v)]
        })
        .collect();
    make_loop(coeffs, true).expect("imaginary coefficients symmetric in m are antihermitian")
}
