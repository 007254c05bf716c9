use crate::{polarization_sign, CMat, Complex64, FourierError, ModeWindow, Result};

/// Form degree parity of an operator inside the graded algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Self {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn of_degree(degree: usize) -> Self {
        if degree.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Dense operator on a mode window.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockOperator {
    window: ModeWindow,
    entries: CMat,
    parity: Option<Parity>,
}

impl BlockOperator {
    pub fn new(window: ModeWindow, entries: CMat) -> Result<Self> {
        let n = window.dim();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(FourierError::DimensionMismatch {
                expected: n,
                found: entries.nrows(),
            });
        }
        Ok(Self {
            window,
            entries,
            parity: None,
        })
    }

    pub fn zeros(window: ModeWindow) -> Self {
        let n = window.dim();
        Self {
            window,
            entries: CMat::zeros(n, n),
            parity: None,
        }
    }

    pub fn identity(window: ModeWindow) -> Self {
        let n = window.dim();
        Self {
            window,
            entries: CMat::identity(n, n),
            parity: None,
        }
    }

    /// The polarization `epsilon`, diagonal with `+1` on modes `k >= 0`.
    pub fn polarization(window: ModeWindow) -> Self {
        let n = window.dim();
        let mut entries = CMat::zeros(n, n);
        for i in 0..n {
            entries[(i, i)] = Complex64::new(polarization_sign(window.mode_of(i)), 0.0);
        }
        Self {
            window,
            entries,
            parity: None,
        }
    }

    pub fn with_parity(mut self, parity: Parity) -> Self {
        self.parity = Some(parity);
        self
    }

    pub fn parity(&self) -> Option<Parity> {
        self.parity
    }

    pub fn window(&self) -> ModeWindow {
        self.window
    }

    pub fn matrix(&self) -> &CMat {
        &self.entries
    }

    pub fn into_matrix(self) -> CMat {
        self.entries
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.window != other.window {
            return Err(FourierError::WindowMismatch);
        }
        Ok(())
    }

    fn derived(&self, entries: CMat) -> Self {
        Self {
            window: self.window,
            entries,
            parity: None,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.derived(&self.entries * &other.entries))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.derived(&self.entries + &other.entries))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.derived(&self.entries - &other.entries))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            window: self.window,
            entries: &self.entries * factor,
            parity: self.parity,
        }
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.derived(&self.entries * &other.entries - &other.entries * &self.entries))
    }

    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.derived(&self.entries * &other.entries + &other.entries * &self.entries))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            window: self.window,
            entries: self.entries.adjoint(),
            parity: self.parity,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    /// Entries on the sub-window `|k| <= K - margin`.
    pub fn interior(&self, margin: usize) -> CMat {
        let r = self.window.interior(margin);
        self.entries
            .view((r.start, r.start), (r.len(), r.len()))
            .into_owned()
    }

    /// Entries of the sub-window of radius `radius`, re-indexed as an operator on that window.
    pub fn restrict(&self, radius: usize) -> Result<Self> {
        if radius > self.window.radius() {
            return Err(FourierError::WindowTooSmall {
                radius: self.window.radius(),
                required: radius,
            });
        }
        let target = ModeWindow::new(radius, self.window.fiber())?;
        let m = self.interior(self.window.radius() - radius);
        Ok(Self {
            window: target,
            entries: m,
            parity: self.parity,
        })
    }
}
