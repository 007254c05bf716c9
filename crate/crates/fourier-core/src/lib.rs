//! Fourier-side realization of loops on the circle.
//!
//! A loop is stored by its finitely many Fourier coefficients; operators act on
//! a truncated mode window `[-K, K]` tensored with the fiber `C^d`. The matrix
//! index of `(mode k, component i)` is `(k + K) * d + i`.

mod block;
mod diagonal;
mod error;
mod gauge;
mod loops;
pub mod sample;
mod window;

pub use block::{BlockOperator, Parity};
pub use diagonal::{diagonal_operator, DiagonalKind};
pub use error::FourierError;
pub use gauge::{
    condition_number, gauge_transform, infinitesimal_gauge, ym_connection, DEFAULT_CONDITION_BOUND,
};
pub use loops::{leibniz_defect, make_loop, sobolev_norm, toeplitz_embed, LoopElement};
pub use window::ModeWindow;

pub use nalgebra::DMatrix;
pub use num_complex::Complex64;

/// Dense complex matrix used throughout the workspace.
pub type CMat = DMatrix<Complex64>;

pub type Result<T> = std::result::Result<T, FourierError>;

/// Sign convention inside the polarization operator: `+1` on mode zero.
#[inline]
pub fn polarization_sign(mode: i64) -> f64 {
    if mode >= 0 {
        1.0
    } else {
        -1.0
    }
}

/// Largest entry modulus, the workhorse residual measure.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}
