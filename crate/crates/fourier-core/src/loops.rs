use std::collections::BTreeMap;

use crate::{BlockOperator, CMat, Complex64, FourierError, ModeWindow, Result};

const ANTIHERMITIAN_TOL: f64 = 1e-12;

/// Band-limited matrix-valued Fourier series `sum_n X_n e^{inx}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopElement {
    coeffs: BTreeMap<i64, CMat>,
    fiber: usize,
    antihermitian: bool,
}

/// Builds a loop from its coefficients, validating shapes and, when flagged,
/// the reality condition `X_n^* = -X_{-n}`.
pub fn make_loop(coeffs: BTreeMap<i64, CMat>, antihermitian: bool) -> Result<LoopElement> {
    let fiber = coeffs
        .values()
        .next()
        .ok_or(FourierError::EmptyLoop)?
        .nrows();
    for m in coeffs.values() {
        if m.nrows() != fiber || m.ncols() != fiber {
            return Err(FourierError::DimensionMismatch {
                expected: fiber,
                found: m.ncols().max(m.nrows()),
            });
        }
    }
    let element = LoopElement {
        coeffs,
        fiber,
        antihermitian: false,
    };
    if antihermitian {
        let defect = element.antihermitian_defect();
        if let Some((mode, d)) = defect.filter(|(_, d)| *d > ANTIHERMITIAN_TOL) {
            return Err(FourierError::NotAntihermitian { mode, defect: d });
        }
    }
    Ok(LoopElement {
        antihermitian,
        ..element
    })
}

impl LoopElement {
    pub fn zero(fiber: usize) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            fiber,
            antihermitian: true,
        }
    }

    pub fn constant(value: CMat) -> Self {
        let fiber = value.nrows();
        Self {
            coeffs: BTreeMap::from([(0, value)]),
            fiber,
            antihermitian: false,
        }
    }

    /// `value * e^{i mode x}`.
    pub fn monomial(mode: i64, value: CMat) -> Self {
        let fiber = value.nrows();
        Self {
            coeffs: BTreeMap::from([(mode, value)]),
            fiber,
            antihermitian: false,
        }
    }

    /// Scalar loop from `(mode, coefficient)` pairs.
    pub fn scalar(terms: &[(i64, Complex64)]) -> Self {
        let mut coeffs = BTreeMap::new();
        for &(n, c) in terms {
            let entry = coeffs.entry(n).or_insert_with(|| CMat::zeros(1, 1));
            entry[(0, 0)] += c;
        }
        Self {
            coeffs,
            fiber: 1,
            antihermitian: false,
        }
    }

    pub fn fiber(&self) -> usize {
        self.fiber
    }

    pub fn is_antihermitian(&self) -> bool {
        self.antihermitian
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, CMat> {
        &self.coeffs
    }

    pub fn coeff(&self, mode: i64) -> Option<&CMat> {
        self.coeffs.get(&mode)
    }

    /// Largest `|n|` among stored coefficients.
    pub fn bandwidth(&self) -> usize {
        self.coeffs
            .keys()
            .map(|n| n.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Worst violation of `X_n^* = -X_{-n}` over stored modes.
    pub fn antihermitian_defect(&self) -> Option<(i64, f64)> {
        let zero = CMat::zeros(self.fiber, self.fiber);
        let mut worst: Option<(i64, f64)> = None;
        for (&n, x) in &self.coeffs {
            let partner = self.coeffs.get(&-n).unwrap_or(&zero);
            let d = (x.adjoint() + partner).norm();
            if worst.is_none_or(|(_, w)| d > w) {
                worst = Some((n, d));
            }
        }
        worst
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.fiber != other.fiber {
            return Err(FourierError::DimensionMismatch {
                expected: self.fiber,
                found: other.fiber,
            });
        }
        Ok(())
    }

    fn from_map(coeffs: BTreeMap<i64, CMat>, fiber: usize) -> Self {
        Self {
            coeffs,
            fiber,
            antihermitian: false,
        }
    }

    /// Pointwise product, a convolution of coefficients.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out: BTreeMap<i64, CMat> = BTreeMap::new();
        for (&m, x) in &self.coeffs {
            for (&n, y) in &other.coeffs {
                let term = x * y;
                out.entry(m + n)
                    .and_modify(|acc| *acc += &term)
                    .or_insert(term);
            }
        }
        Ok(Self::from_map(out, self.fiber))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let xy = self.product(other)?;
        let yx = other.product(self)?;
        let mut bracket = xy.sub(&yx)?;
        bracket.antihermitian = self.antihermitian && other.antihermitian;
        Ok(bracket)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.coeffs.clone();
        for (&n, y) in &other.coeffs {
            out.entry(n)
                .and_modify(|acc| *acc += y)
                .or_insert_with(|| y.clone());
        }
        let mut sum = Self::from_map(out, self.fiber);
        sum.antihermitian = self.antihermitian && other.antihermitian;
        Ok(sum)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|(&n, x)| (n, x * factor)).collect();
        let real = factor.im == 0.0;
        Self {
            coeffs,
            fiber: self.fiber,
            antihermitian: self.antihermitian && real,
        }
    }

    /// Pointwise adjoint `x -> X(x)^*`.
    pub fn adjoint(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&n, x)| (-n, x.adjoint()))
            .collect();
        Self::from_map(coeffs, self.fiber)
    }

    /// Applies the Fourier multiplier `sgn(n)|n|^q` to the coefficients.
    pub fn frac_derivative(&self, q: f64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(&n, x)| {
                let s = if n == 0 {
                    0.0
                } else {
                    n.signum() as f64 * (n.abs() as f64).powf(q)
                };
                (n, x * Complex64::new(s, 0.0))
            })
            .collect();
        Self::from_map(coeffs, self.fiber)
    }

    /// Keeps only the modes selected by `keep`.
    pub fn filter_modes(&self, keep: impl Fn(i64) -> bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(n, _)| keep(**n))
            .map(|(&n, x)| (n, x.clone()))
            .collect();
        Self::from_map(coeffs, self.fiber)
    }

    /// Largest coefficient deviation from `other`.
    pub fn distance(&self, other: &Self) -> f64 {
        let diff = match self.sub(other) {
            Ok(d) => d,
            Err(_) => return f64::INFINITY,
        };
        diff.coeffs.values().map(|m| m.norm()).fold(0.0, f64::max)
    }
}

/// `sqrt(sum_n (1+n^2)^q |g_n|_F^2)`.
pub fn sobolev_norm(g: &LoopElement, q: f64) -> f64 {
    g.coeffs
        .iter()
        .map(|(&n, x)| (1.0 + (n * n) as f64).powf(q) * x.norm_squared())
        .sum::<f64>()
        .sqrt()
}

/// Block-Toeplitz matrix with block `(m, k)` equal to `X_{m-k}`.
pub fn toeplitz_embed(x: &LoopElement, window: ModeWindow) -> Result<BlockOperator> {
    let d = window.fiber();
    if x.fiber() != d {
        return Err(FourierError::DimensionMismatch {
            expected: d,
            found: x.fiber(),
        });
    }
    let n = window.dim();
    let mut entries = CMat::zeros(n, n);
    for m in window.modes() {
        for (&shift, block) in x.coeffs() {
            let k = m - shift;
            if !window.contains(k) {
                continue;
            }
            let (r, c) = (window.index(m, 0), window.index(k, 0));
            entries.view_mut((r, c), (d, d)).copy_from(block);
        }
    }
    BlockOperator::new(window, entries)
}

/// Frobenius norm of `D^q(psi phi) - (D^q psi) phi - psi (D^q phi)` over the
/// coefficients with `|n| <= K`.
pub fn leibniz_defect(
    q: f64,
    psi: &LoopElement,
    phi: &LoopElement,
    window: ModeWindow,
) -> Result<f64> {
    let whole = psi.product(phi)?.frac_derivative(q);
    let left = psi.frac_derivative(q).product(phi)?;
    let right = psi.product(&phi.frac_derivative(q))?;
    let defect = whole.sub(&left)?.sub(&right)?;
    Ok(defect
        .coeffs()
        .iter()
        .filter(|(n, _)| window.contains(**n))
        .map(|(_, m)| m.norm_squared())
        .sum::<f64>()
        .sqrt())
}
