use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FourierError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("loop is not antihermitian: defect {defect:e} at mode {mode}")]
    NotAntihermitian { mode: i64, defect: f64 },
    #[error("a loop needs at least one Fourier coefficient")]
    EmptyLoop,
    #[error("fractional exponent {0} outside the admissible range")]
    InvalidExponent(f64),
    #[error("window radius must be at least 1")]
    EmptyWindow,
    #[error("window radius {radius} too small, need at least {required}")]
    WindowTooSmall { radius: usize, required: usize },
    #[error(
        "multiplication operator ill-conditioned: condition number {condition:e} exceeds {bound:e}"
    )]
    IllConditioned { condition: f64, bound: f64 },
    #[error("operators live on different windows")]
    WindowMismatch,
}
