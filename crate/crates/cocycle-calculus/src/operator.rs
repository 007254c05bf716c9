use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

use fourier_core::{CMat, Complex64};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

/// Dense window matrix that remembers where its nonzero entries live, so that
/// products with localized factors only touch the relevant rows and columns.
#[derive(Debug)]
pub struct Operator {
    id: u64,
    matrix: CMat,
    /// Column range of the nonzero entries of each row.
    row_extents: Vec<Option<(usize, usize)>>,
    rows: Range<usize>,
}

fn extents(m: &CMat) -> (Vec<Option<(usize, usize)>>, Range<usize>) {
    let zero = Complex64::new(0.0, 0.0);
    let ext: Vec<Option<(usize, usize)>> = (0..m.nrows())
        .map(|i| {
            let row = m.row(i);
            let first = row.iter().position(|z| *z != zero)?;
            let last = row.iter().rposition(|z| *z != zero)?;
            Some((first, last + 1))
        })
        .collect();
    let first = ext.iter().position(Option::is_some);
    let rows = match first {
        Some(f) => f..ext.iter().rposition(Option::is_some).unwrap() + 1,
        None => 0..0,
    };
    (ext, rows)
}

impl Operator {
    pub fn new(matrix: CMat) -> Self {
        let (row_extents, rows) = extents(&matrix);
        Self {
            id: fresh_id(),
            matrix,
            row_extents,
            rows,
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Rows that carry nonzero entries.
    pub fn row_support(&self) -> Range<usize> {
        self.rows.clone()
    }

    pub(crate) fn strip(&self) -> Strip {
        let rows = self.rows.clone();
        let (lo, hi) = self.row_extents[rows.clone()]
            .iter()
            .flatten()
            .fold((usize::MAX, 0), |(lo, hi), &(a, b)| (lo.min(a), hi.max(b)));
        if rows.is_empty() {
            return Strip::empty();
        }
        Strip {
            first_row: rows.start,
            offset: lo,
            data: self
                .matrix
                .view((rows.start, lo), (rows.len(), hi - lo))
                .into_owned(),
        }
    }

    pub fn mul(&self, other: &Operator) -> Operator {
        let strip = self.strip().mul(other);
        Operator::new(strip.embed(self.dim()))
    }

    pub fn add(&self, other: &Operator) -> Operator {
        Operator::new(&self.matrix + &other.matrix)
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        Operator::new(&self.matrix - &other.matrix)
    }

    pub fn scale(&self, factor: Complex64) -> Operator {
        Operator::new(&self.matrix * factor)
    }

    pub fn commutator(&self, other: &Operator) -> Operator {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Operator) -> Operator {
        self.mul(other).add(&other.mul(self))
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }
}

/// Consecutive rows `first_row..` of a product, stored on the column range
/// `offset..offset + data.ncols()` outside of which they vanish.
#[derive(Debug, Clone)]
pub(crate) struct Strip {
    first_row: usize,
    offset: usize,
    data: CMat,
}

impl Strip {
    fn empty() -> Self {
        Strip {
            first_row: 0,
            offset: 0,
            data: CMat::zeros(0, 0),
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.data.nrows() == 0 || self.data.ncols() == 0
    }

    pub(crate) fn mul(&self, op: &Operator) -> Strip {
        if self.is_zero() {
            return Strip::empty();
        }
        let (a, b) = (self.offset, self.offset + self.data.ncols());
        let (lo, hi) = op.row_extents[a..b]
            .iter()
            .flatten()
            .fold((usize::MAX, 0), |(lo, hi), &(x, y)| (lo.min(x), hi.max(y)));
        if lo >= hi {
            return Strip::empty();
        }
        let zero = Complex64::new(0.0, 0.0);
        let mut data = CMat::zeros(self.data.nrows(), hi - lo);
        for k in a..b {
            let Some((from, to)) = op.row_extents[k] else {
                continue;
            };
            let source = self.data.column(k - a);
            if source.iter().all(|z| *z == zero) {
                continue;
            }
            for j in from..to {
                let w = op.matrix[(k, j)];
                if w != zero {
                    data.column_mut(j - lo)
                        .axpy(w, &source, Complex64::new(1.0, 0.0));
                }
            }
        }
        Strip {
            first_row: self.first_row,
            offset: lo,
            data,
        }
        .trimmed()
    }

    fn trimmed(self) -> Strip {
        let zero = Complex64::new(0.0, 0.0);
        let nonzero = |j: usize| self.data.column(j).iter().any(|z| *z != zero);
        let first = (0..self.data.ncols()).find(|&j| nonzero(j));
        match first {
            None => Strip::empty(),
            Some(f) => {
                let last = (0..self.data.ncols()).rev().find(|&j| nonzero(j)).unwrap();
                if f == 0 && last + 1 == self.data.ncols() {
                    return self;
                }
                let data = self.data.columns(f, last + 1 - f).into_owned();
                Strip {
                    first_row: self.first_row,
                    offset: self.offset + f,
                    data,
                }
            }
        }
    }

    pub(crate) fn trace(&self) -> Complex64 {
        (0..self.data.nrows())
            .filter_map(|i| {
                let col = (self.first_row + i).checked_sub(self.offset)?;
                (col < self.data.ncols()).then(|| self.data[(i, col)])
            })
            .sum()
    }

    fn embed(&self, dim: usize) -> CMat {
        let mut m = CMat::zeros(dim, dim);
        if !self.is_zero() {
            m.view_mut((self.first_row, self.offset), self.data.shape())
                .copy_from(&self.data);
        }
        m
    }
}

/// Trace of a cyclic product, started at the factor with the fewest nonzero rows.
pub(crate) fn word_trace(factors: &[&Operator]) -> Complex64 {
    let Some(start) = (0..factors.len()).min_by_key(|&i| factors[i].rows.len()) else {
        return Complex64::new(0.0, 0.0);
    };
    let n = factors.len();
    let mut strip = factors[start].strip();
    for step in 1..n {
        if strip.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        strip = strip.mul(factors[(start + step) % n]);
    }
    strip.trace()
}
