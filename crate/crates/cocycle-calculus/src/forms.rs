use fourier_core::{BlockOperator, CMat, Complex64, ModeWindow, Parity};

use crate::{CocycleError, Result};

/// Whether the Fredholm module is odd (`Gamma = 1`) or even.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleParity {
    Odd,
    Even,
}

fn check_support(x: &CMat, window: ModeWindow, margin: usize) -> Result<()> {
    let zero = Complex64::new(0.0, 0.0);
    let inner = window.radius().saturating_sub(margin.max(1)) as i64;
    for (idx, _) in x
        .row_iter()
        .enumerate()
        .filter(|(_, r)| r.iter().any(|z| *z != zero))
    {
        let mode = window.mode_of(idx);
        if mode.abs() > inner {
            return Err(CocycleError::SupportTouchesBoundary {
                mode,
                margin: margin.max(1),
            });
        }
    }
    for (idx, _) in x
        .column_iter()
        .enumerate()
        .filter(|(_, c)| c.iter().any(|z| *z != zero))
    {
        let mode = window.mode_of(idx);
        if mode.abs() > inner {
            return Err(CocycleError::SupportTouchesBoundary {
                mode,
                margin: margin.max(1),
            });
        }
    }
    Ok(())
}

/// `Tr_C(X) = (1/2) Tr(X + eps X eps)`; refuses integrands whose support comes
/// within `margin` modes of the window edge.
pub fn conditional_trace(x: &BlockOperator, margin: usize) -> Result<Complex64> {
    check_support(x.matrix(), x.window(), margin)?;
    unchecked_conditional_trace(x)
}

fn unchecked_conditional_trace(x: &BlockOperator) -> Result<Complex64> {
    let eps = BlockOperator::polarization(x.window());
    let conj = eps.mul(x)?.mul(&eps)?;
    Ok((x.trace() + conj.trace()) * 0.5)
}

/// Mode reflection `k -> -k - 1` tensor the fiber identity; it anticommutes with
/// the polarization. The reflection of the top mode falls outside the window and is dropped.
pub fn mode_reflection(window: ModeWindow) -> BlockOperator {
    let n = window.dim();
    let d = window.fiber();
    let mut m = CMat::zeros(n, n);
    for k in window.modes() {
        let image = -k - 1;
        if window.contains(image) {
            for i in 0..d {
                m[(window.index(image, i), window.index(k, i))] = Complex64::new(1.0, 0.0);
            }
        }
    }
    BlockOperator::new(window, m).expect("sized from the window")
}

/// `Str(X) = Tr_C(Gamma X)`.
pub fn graded_trace(x: &BlockOperator, parity: ModuleParity, margin: usize) -> Result<Complex64> {
    match parity {
        ModuleParity::Odd => conditional_trace(x, margin),
        ModuleParity::Even => {
            check_support(x.matrix(), x.window(), margin)?;
            unchecked_conditional_trace(&mode_reflection(x.window()).mul(x)?)
        }
    }
}

/// `dX = [eps, X]` on even forms and `{eps, X}` on odd forms; flips the parity tag.
pub fn d_operator(x: &BlockOperator) -> Result<BlockOperator> {
    let parity = x.parity().ok_or(CocycleError::MissingParity)?;
    let eps = BlockOperator::polarization(x.window());
    let out = match parity {
        Parity::Even => eps.commutator(x)?,
        Parity::Odd => eps.anticommutator(x)?,
    };
    Ok(out.with_parity(parity.flip()))
}
