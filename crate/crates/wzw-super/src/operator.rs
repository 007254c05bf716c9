use fourier_core::{CMat, Complex64};
use sprs::{CsMat, TriMat};

/// Sparse complex matrix on a Fock basis, CSR storage.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator(CsMat<Complex64>);

impl FockOperator {
    pub fn from_csmat(m: CsMat<Complex64>) -> Self {
        Self(m.to_csr())
    }

    pub fn from_triplets(
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, Complex64)>,
    ) -> Self {
        let mut tri = TriMat::new((dim, dim));
        for (r, c, v) in entries {
            tri.add_triplet(r, c, v);
        }
        Self(tri.to_csr())
    }

    pub fn zero(dim: usize) -> Self {
        Self(CsMat::zero((dim, dim)))
    }

    pub fn identity(dim: usize) -> Self {
        Self(CsMat::eye(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn nnz(&self) -> usize {
        self.0.nnz()
    }

    pub fn matrix(&self) -> &CsMat<Complex64> {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(&self.0 * &other.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(self.0.map(|v| v * factor))
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.transpose_view().to_csr().map(|v| v.conj()))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.0.get(row, col).copied().unwrap_or_default()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.0.data().iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude among the columns flagged in `mask`.
    pub fn max_abs_on_columns(&self, mask: &[bool]) -> f64 {
        let mut worst: f64 = 0.0;
        for row in self.0.outer_iterator() {
            for (c, v) in row.iter() {
                if mask[c] {
                    worst = worst.max(v.norm());
                }
            }
        }
        worst
    }

    /// Largest entry magnitude with both row and column flagged in `mask`.
    pub fn max_abs_on_block(&self, mask: &[bool]) -> f64 {
        let mut worst: f64 = 0.0;
        for (r, row) in self.0.outer_iterator().enumerate() {
            if !mask[r] {
                continue;
            }
            for (c, v) in row.iter() {
                if mask[c] {
                    worst = worst.max(v.norm());
                }
            }
        }
        worst
    }

    /// Product with a dense block of column vectors.
    pub fn apply(&self, block: &CMat) -> CMat {
        let mut out = CMat::zeros(self.dim(), block.ncols());
        for (r, row) in self.0.outer_iterator().enumerate() {
            for (c, v) in row.iter() {
                for j in 0..block.ncols() {
                    out[(r, j)] += v * block[(c, j)];
                }
            }
        }
        out
    }

    /// Rows `rows` of the product with a dense block.
    pub fn apply_rows(&self, block: &CMat, rows: &[usize]) -> CMat {
        let mut out = CMat::zeros(rows.len(), block.ncols());
        for (i, &r) in rows.iter().enumerate() {
            if let Some(row) = self.0.outer_view(r) {
                for (c, v) in row.iter() {
                    for j in 0..block.ncols() {
                        out[(i, j)] += v * block[(c, j)];
                    }
                }
            }
        }
        out
    }

    /// `A (x) B` on the product basis `i_a * dim_b + i_b`.
    pub fn kron(&self, other: &Self) -> Self {
        let db = other.dim();
        let mut entries = Vec::with_capacity(self.nnz() * other.nnz());
        for (ra, row_a) in self.0.outer_iterator().enumerate() {
            for (ca, va) in row_a.iter() {
                for (rb, row_b) in other.0.outer_iterator().enumerate() {
                    for (cb, vb) in row_b.iter() {
                        entries.push((ra * db + rb, ca * db + cb, va * vb));
                    }
                }
            }
        }
        Self::from_triplets(self.dim() * db, entries)
    }
}
