use fourier_core::FourierError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error("Schatten index 2p = {0} must be at least 2")]
    InvalidIndex(f64),
    #[error("operator is not unitary: |g*g - 1| = {defect:.3e}")]
    NotUnitary { defect: f64 },
    #[error("window radius {radius} cannot hold bandwidth {bandwidth}; need at least {required}")]
    WindowTooSmall {
        radius: usize,
        bandwidth: usize,
        required: usize,
    },
    #[error("need at least {required} positive samples for a decay fit, got {found}")]
    TooFewSamples { required: usize, found: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
