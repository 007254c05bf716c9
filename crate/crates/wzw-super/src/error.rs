use cocycle_calculus::CocycleError;
use fourier_core::FourierError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WzwError {
    #[error(transparent)]
    Fourier(#[from] FourierError),
    #[error(transparent)]
    Cocycle(#[from] CocycleError),
    #[error("structure constants are not totally antisymmetric (defect {defect:.3e})")]
    NotAntisymmetric { defect: f64 },
    #[error("structure constants violate the Jacobi identity (defect {defect:.3e})")]
    JacobiViolated { defect: f64 },
    #[error("Casimir sum is {found}, expected {expected}")]
    CasimirMismatch { found: f64, expected: f64 },
    #[error("structure tensor has {found} entries, expected {expected}")]
    TensorShape { expected: usize, found: usize },
    #[error("Fock dimension 2^{log2} exceeds the cap 2^{cap_log2}")]
    CapacityExceeded { log2: usize, cap_log2: usize },
    #[error("mode cutoff must be at least 1")]
    EmptyCutoff,
    #[error("mode {mode} is outside the cutoff {cutoff}")]
    ModeOutOfRange { mode: i64, cutoff: usize },
    #[error("color {color} out of range for algebra dimension {dim}")]
    ColorOutOfRange { color: usize, dim: usize },
    #[error("mode span {span} at level {level} needs cutoff {required}, have {cutoff}")]
    BudgetExceeded {
        span: usize,
        level: usize,
        required: usize,
        cutoff: usize,
    },
    #[error("gauge potential has {found} color components, expected {expected}")]
    PotentialShape { expected: usize, found: usize },
    #[error(
        "gauge potential component {color} violates the reality condition (defect {defect:.3e})"
    )]
    PotentialNotReal { color: usize, defect: f64 },
    #[error("operation needs the {0} bosonic realization")]
    WrongRealization(&'static str),
    #[error("vacuum potential was not calibrated: {0}")]
    Uncalibrated(String),
}
