use crate::{FourierError, Result};

/// Truncation of `L^2(S^1, C^d)` to the modes `-K..=K`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeWindow {
    radius: usize,
    fiber: usize,
}

impl ModeWindow {
    pub fn new(radius: usize, fiber: usize) -> Result<Self> {
        if radius == 0 {
            return Err(FourierError::EmptyWindow);
        }
        if fiber == 0 {
            return Err(FourierError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        Ok(Self { radius, fiber })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn fiber(&self) -> usize {
        self.fiber
    }

    pub fn num_modes(&self) -> usize {
        2 * self.radius + 1
    }

    /// Total matrix dimension `(2K+1) d`.
    pub fn dim(&self) -> usize {
        self.num_modes() * self.fiber
    }

    pub fn contains(&self, mode: i64) -> bool {
        mode.unsigned_abs() as usize <= self.radius
    }

    pub fn modes(&self) -> impl Iterator<Item = i64> {
        let k = self.radius as i64;
        -k..=k
    }

    pub fn index(&self, mode: i64, component: usize) -> usize {
        debug_assert!(self.contains(mode) && component < self.fiber);
        (mode + self.radius as i64) as usize * self.fiber + component
    }

    pub fn mode_of(&self, index: usize) -> i64 {
        (index / self.fiber) as i64 - self.radius as i64
    }

    /// Number of indices belonging to negative modes; they come first.
    pub fn negative_len(&self) -> usize {
        self.radius * self.fiber
    }

    pub fn grow(&self, by: usize) -> Self {
        Self {
            radius: self.radius + by,
            fiber: self.fiber,
        }
    }

    /// Index range of the sub-window `|k| <= K - margin`.
    pub fn interior(&self, margin: usize) -> std::ops::Range<usize> {
        let r = self.radius.saturating_sub(margin) as i64;
        self.index(-r, 0)..self.index(r, self.fiber - 1) + 1
    }
}
