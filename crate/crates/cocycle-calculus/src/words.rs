use std::sync::Arc;

use fourier_core::Complex64;

use crate::operator::{fresh_id, Operator};

/// A Lie-algebra argument on the window: its multiplication operator and `dX = [eps, X]`.
#[derive(Debug, Clone)]
pub struct LieElement {
    id: u64,
    pub(crate) x: Arc<Operator>,
    pub(crate) dx: Arc<Operator>,
    bandwidth: usize,
}

impl LieElement {
    /// `eps` must be diagonal; `dX` is then `(eps_i - eps_j) X_ij` entrywise.
    pub(crate) fn from_parts(x: Operator, eps: &Operator, bandwidth: usize) -> Self {
        let signs = eps.matrix().diagonal();
        let dx = Operator::new(fourier_core::CMat::from_fn(x.dim(), x.dim(), |i, j| {
            (signs[i] - signs[j]) * x.matrix()[(i, j)]
        }));
        Self {
            id: fresh_id(),
            x: Arc::new(x),
            dx: Arc::new(dx),
            bandwidth,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn operator(&self) -> &Arc<Operator> {
        &self.x
    }

    pub fn differential(&self) -> &Arc<Operator> {
        &self.dx
    }
}

/// One factor of a trace word.
#[derive(Debug, Clone)]
pub enum Slot {
    /// The connection `B` after Lie derivatives along the listed directions;
    /// the first entry was applied first.
    Connection(Vec<LieElement>),
    Fixed(Arc<Operator>),
}

impl Slot {
    pub fn b() -> Self {
        Slot::Connection(Vec::new())
    }

    pub fn op(op: &Arc<Operator>) -> Self {
        Slot::Fixed(Arc::clone(op))
    }
}

pub type Word = Vec<Slot>;

/// `sum_i c_i Tr(word_i)` with words built from `B`, its derivatives and fixed operators.
#[derive(Debug, Clone, Default)]
pub struct TraceWordSum {
    terms: Vec<(Complex64, Word)>,
}

impl TraceWordSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(coefficient: Complex64, word: Word) -> Self {
        Self {
            terms: vec![(coefficient, word)],
        }
    }

    pub fn push(&mut self, coefficient: Complex64, word: Word) {
        if coefficient != Complex64::new(0.0, 0.0) {
            self.terms.push((coefficient, word));
        }
    }

    pub fn extend_scaled(&mut self, factor: Complex64, other: TraceWordSum) {
        for (c, w) in other.terms {
            self.push(factor * c, w);
        }
    }

    pub fn terms(&self) -> &[(Complex64, Word)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(mut self, factor: Complex64) -> Self {
        for t in &mut self.terms {
            t.0 *= factor;
        }
        self
    }

    /// Exact `L_X`: product rule over the connection slots, each replaced in
    /// turn by `[B, X] + dX`.
    pub fn lie_derivative(&self, direction: &LieElement) -> TraceWordSum {
        let mut out = TraceWordSum::new();
        for (c, word) in &self.terms {
            for (pos, slot) in word.iter().enumerate() {
                if let Slot::Connection(path) = slot {
                    let mut new_word = word.clone();
                    let mut new_path = path.clone();
                    new_path.push(direction.clone());
                    new_word[pos] = Slot::Connection(new_path);
                    out.push(*c, new_word);
                }
            }
        }
        out
    }
}

/// `[B; n]` followed by nothing: `n` connection slots.
pub fn b_power(n: usize) -> Word {
    vec![Slot::b(); n]
}

/// Concatenation helper for building words.
pub fn word(parts: impl IntoIterator<Item = Word>) -> Word {
    parts.into_iter().flatten().collect()
}
