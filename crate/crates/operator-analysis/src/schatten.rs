use fourier_core::{toeplitz_embed, BlockOperator, Complex64, LoopElement, ModeWindow};

use crate::{AnalysisError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormMethod {
    SingularValues,
    Basis,
}

/// Both evaluations of `||A||_{2p}` on one window.
#[derive(Debug, Clone, PartialEq)]
pub struct SchattenReport {
    /// Half index `p`; the norm index is `2p`.
    pub p: f64,
    pub value_sv: f64,
    pub value_basis: f64,
    pub radius: usize,
    /// Set once the report has been compared with one on a larger window.
    pub converged: Option<bool>,
}

impl SchattenReport {
    pub fn value(&self, method: NormMethod) -> f64 {
        match method {
            NormMethod::SingularValues => self.value_sv,
            NormMethod::Basis => self.value_basis,
        }
    }

    /// Marks convergence when the singular-value norm moved by less than `rel_tol`.
    pub fn compare_with(&mut self, larger: &SchattenReport, rel_tol: f64) -> bool {
        let scale = self
            .value_sv
            .abs()
            .max(larger.value_sv.abs())
            .max(f64::MIN_POSITIVE);
        let ok = (self.value_sv - larger.value_sv).abs() / scale < rel_tol
            || self.value_sv == larger.value_sv;
        self.converged = Some(ok);
        ok
    }
}

pub fn schatten_norm(a: &BlockOperator, two_p: f64) -> Result<SchattenReport> {
    if two_p.is_nan() || two_p < 2.0 {
        return Err(AnalysisError::InvalidIndex(two_p));
    }
    let p = two_p / 2.0;
    let m = a.matrix();
    let value_sv = if m.nrows() == 0 {
        0.0
    } else {
        m.singular_values()
            .iter()
            .map(|s| s.powf(two_p))
            .sum::<f64>()
            .powf(1.0 / two_p)
    };
    let value_basis = m
        .column_iter()
        .map(|c| c.norm().powf(two_p))
        .sum::<f64>()
        .powf(1.0 / two_p);
    Ok(SchattenReport {
        p,
        value_sv,
        value_basis,
        radius: a.window().radius(),
        converged: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LawComparison {
    pub lhs: f64,
    pub rhs: f64,
}

impl LawComparison {
    pub fn relative_error(&self) -> f64 {
        let scale = self.lhs.abs().max(self.rhs.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.lhs - self.rhs).abs() / scale
        }
    }
}

fn check_window(g: &LoopElement, window: ModeWindow) -> Result<()> {
    let required = 2 * g.bandwidth();
    if window.radius() < required {
        return Err(AnalysisError::WindowTooSmall {
            radius: window.radius(),
            bandwidth: g.bandwidth(),
            required,
        });
    }
    if window.fiber() != g.fiber() {
        return Err(fourier_core::FourierError::DimensionMismatch {
            expected: window.fiber(),
            found: g.fiber(),
        }
        .into());
    }
    Ok(())
}

/// Basis-form `||[eps, M_g]||_{2p}^{2p}` against `2^{2p} sum_n |n| |g_n|^{2p}`
/// with `|g_n|` the Frobenius norm of the coefficient.
pub fn epsilon_commutator_law(
    g: &LoopElement,
    p: f64,
    window: ModeWindow,
) -> Result<LawComparison> {
    if p.is_nan() || p < 1.0 {
        return Err(AnalysisError::InvalidIndex(2.0 * p));
    }
    check_window(g, window)?;
    let eps = BlockOperator::polarization(window);
    let comm = eps.commutator(&toeplitz_embed(g, window)?)?;
    let lhs = comm
        .matrix()
        .column_iter()
        .map(|c| c.norm_squared().powf(p))
        .sum();
    let rhs = 4f64.powf(p)
        * g.coeffs()
            .iter()
            .map(|(&n, c)| n.unsigned_abs() as f64 * c.norm().powf(2.0 * p))
            .sum::<f64>();
    Ok(LawComparison { lhs, rhs })
}

/// Closed form of the basis-form sum read off from the columns of `[eps, M_g]`:
/// column `(k, i)` has squared norm `4 sum ||g_n e_i||^2` over the modes `n`
/// with `k + n` on the other side of the polarization.
pub fn column_norm_law(g: &LoopElement, p: f64) -> f64 {
    let band = g.bandwidth() as i64;
    let side = |k: i64| k >= 0;
    let mut total = 0.0;
    for k in -band..band {
        for i in 0..g.fiber() {
            let sq: f64 = g
                .coeffs()
                .iter()
                .filter(|(&n, _)| side(k + n) != side(k))
                .map(|(_, c)| c.column(i).norm_squared())
                .sum();
            total += (4.0 * sq).powf(p);
        }
    }
    total
}

/// `||[eps, M_g]||_2^2` for the scalar loop `g_n = |n|^{-(1/2 + q)}`, `1 <= |n| <= bandwidth`.
pub fn divergence_witness(q: f64, bandwidth: usize) -> Result<f64> {
    if bandwidth == 0 {
        return Err(AnalysisError::InvalidParameter(
            "bandwidth must be positive".into(),
        ));
    }
    let b = bandwidth as i64;
    let terms: Vec<(i64, Complex64)> = (1..=b)
        .flat_map(|n| {
            let v = Complex64::new((n as f64).powf(-(0.5 + q)), 0.0);
            [(n, v), (-n, v)]
        })
        .collect();
    let g = LoopElement::scalar(&terms);
    let window = ModeWindow::new(2 * bandwidth, 1)?;
    Ok(epsilon_commutator_law(&g, 1.0, window)?.lhs)
}
