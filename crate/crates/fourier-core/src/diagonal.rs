use crate::{polarization_sign, BlockOperator, CMat, Complex64, FourierError, ModeWindow, Result};

/// Fourier multipliers acting diagonally on the mode window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiagonalKind {
    /// `sgn(k)` with value `+1` on mode zero.
    Sign,
    /// `sgn(k)|k|^q`, zero on mode zero.
    FracDirac(f64),
    /// `|k|^q`.
    AbsFracDirac(f64),
    /// `e^{i q pi sgn(k)/2}|k|^q` with `sgn(0) = 0`.
    Weyl(f64),
}

impl DiagonalKind {
    fn validate(self) -> Result<()> {
        match self {
            DiagonalKind::Sign => Ok(()),
            DiagonalKind::FracDirac(q) | DiagonalKind::Weyl(q) if q > 0.0 && q <= 1.0 => Ok(()),
            // products D^q D^r land here with exponents up to 2
            DiagonalKind::AbsFracDirac(q) if q > 0.0 && q <= 2.0 => Ok(()),
            DiagonalKind::FracDirac(q) | DiagonalKind::Weyl(q) | DiagonalKind::AbsFracDirac(q) => {
                Err(FourierError::InvalidExponent(q))
            }
        }
    }

    pub fn symbol(self, mode: i64) -> Complex64 {
        let k = mode.abs() as f64;
        let s = mode.signum() as f64;
        match self {
            DiagonalKind::Sign => Complex64::new(polarization_sign(mode), 0.0),
            DiagonalKind::FracDirac(q) => Complex64::new(s * k.powf(q), 0.0),
            DiagonalKind::AbsFracDirac(q) => {
                Complex64::new(if mode == 0 { 0.0 } else { k.powf(q) }, 0.0)
            }
            DiagonalKind::Weyl(q) => {
                let magnitude = if mode == 0 { 0.0 } else { k.powf(q) };
                Complex64::from_polar(magnitude, q * std::f64::consts::PI * s / 2.0)
            }
        }
    }
}

pub fn diagonal_operator(kind: DiagonalKind, window: ModeWindow) -> Result<BlockOperator> {
    kind.validate()?;
    let n = window.dim();
    let mut entries = CMat::zeros(n, n);
    for i in 0..n {
        entries[(i, i)] = kind.symbol(window.mode_of(i));
    }
    BlockOperator::new(window, entries)
}
