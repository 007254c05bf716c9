use crate::{Result, WzwError};

const INVARIANT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub enum GroupTag {
    Su2,
    Custom(String),
}

/// Real structure constants `lambda^{abc}` of a compact Lie algebra, normalized so that
/// `sum lambda^{abc} lambda^{acb} = -N`.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureConstants {
    dim: usize,
    lambda: Vec<f64>,
    h_dual: f64,
    tag: GroupTag,
}

impl StructureConstants {
    /// `lambda^{abc} = eps^{abc} / sqrt 2`, dual Coxeter number 2.
    pub fn su2() -> Self {
        let c = std::f64::consts::FRAC_1_SQRT_2;
        let mut lambda = vec![0.0; 27];
        for (a, b, cc, s) in [
            (0, 1, 2, 1.0),
            (1, 2, 0, 1.0),
            (2, 0, 1, 1.0),
            (0, 2, 1, -1.0),
            (2, 1, 0, -1.0),
            (1, 0, 2, -1.0),
        ] {
            lambda[(a * 3 + b) * 3 + cc] = s * c;
        }
        Self {
            dim: 3,
            lambda,
            h_dual: 2.0,
            tag: GroupTag::Su2,
        }
    }

    /// Validates antisymmetry, Jacobi and the Casimir normalization. The dual Coxeter
    /// number is read off as `-2 C_2 / N`, the level of the adjoint free-fermion current.
    pub fn custom(name: impl Into<String>, dim: usize, lambda: Vec<f64>) -> Result<Self> {
        if lambda.len() != dim * dim * dim {
            return Err(WzwError::TensorShape {
                expected: dim * dim * dim,
                found: lambda.len(),
            });
        }
        let sc = Self {
            dim,
            lambda,
            h_dual: 0.0,
            tag: GroupTag::Custom(name.into()),
        };
        let defect = sc.antisymmetry_defect();
        if defect > INVARIANT_TOL {
            return Err(WzwError::NotAntisymmetric { defect });
        }
        let defect = sc.jacobi_defect();
        if defect > INVARIANT_TOL {
            return Err(WzwError::JacobiViolated { defect });
        }
        let casimir = sc.casimir();
        if (casimir + dim as f64).abs() > INVARIANT_TOL * dim as f64 {
            return Err(WzwError::CasimirMismatch {
                found: casimir,
                expected: -(dim as f64),
            });
        }
        Ok(Self {
            h_dual: -2.0 * casimir / dim as f64,
            ..sc
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn h_dual(&self) -> f64 {
        self.h_dual
    }

    pub fn tag(&self) -> &GroupTag {
        &self.tag
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> f64 {
        self.lambda[(a * self.dim + b) * self.dim + c]
    }

    /// Nonzero entries as `(a, b, c, value)`.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, f64)> + '_ {
        let n = self.dim;
        self.lambda
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(move |(i, &v)| (i / (n * n), (i / n) % n, i % n, v))
    }

    /// `sum_{abc} lambda^{abc} lambda^{acb}`.
    pub fn casimir(&self) -> f64 {
        self.nonzero()
            .map(|(a, b, c, v)| v * self.get(a, c, b))
            .sum()
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = self.get(a, b, c);
                    worst = worst
                        .max((v + self.get(b, a, c)).abs())
                        .max((v + self.get(a, c, b)).abs());
                }
            }
        }
        worst
    }

    /// Largest entry of `lambda^{abe} lambda^{ecd} + lambda^{bce} lambda^{ead} + lambda^{cae} lambda^{ebd}`.
    pub fn jacobi_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let s: f64 = (0..n)
                            .map(|e| {
                                self.get(a, b, e) * self.get(e, c, d)
                                    + self.get(b, c, e) * self.get(e, a, d)
                                    + self.get(c, a, e) * self.get(e, b, d)
                            })
                            .sum();
                        worst = worst.max(s.abs());
                    }
                }
            }
        }
        worst
    }
}
