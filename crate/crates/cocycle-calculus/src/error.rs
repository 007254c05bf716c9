use fourier_core::FourierError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CocycleError {
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error("operator has no parity tag, so d is undefined")]
    MissingParity,
    #[error("window radius {radius} is below the budget {required} for this evaluation")]
    WindowTooSmall { radius: usize, required: usize },
    #[error("integrand support reaches mode {mode}, inside the boundary layer of width {margin}")]
    SupportTouchesBoundary { mode: i64, margin: usize },
    #[error("cochain of degree {expected} received {found} arguments")]
    ArityMismatch { expected: usize, found: usize },
    #[error("operators live on different windows")]
    WindowMismatch,
    #[error(
        "potential calibration is inconsistent: residual spread {spread:.3e} exceeds {bound:.1e}"
    )]
    CalibrationFailed { spread: f64, bound: f64 },
    #[error("calibration batch is empty or degenerate")]
    EmptyCalibration,
}
