use fourier_core::{
    condition_number, toeplitz_embed, BlockOperator, CMat, Complex64, FourierError, LoopElement,
    ModeWindow, Parity, DEFAULT_CONDITION_BOUND,
};

use crate::operator::Operator;
use crate::{CocycleError, Result};

const UNITARY_LOOP_TOL: f64 = 1e-12;

/// Flat connection `B = g^{-1} [eps, g]` on a window, `F = eps + B`.
#[derive(Debug, Clone)]
pub struct GrassmannConnection {
    b: BlockOperator,
    source: Option<LoopElement>,
    bandwidth: usize,
    flatness_residual: f64,
}

fn flatness(b: &BlockOperator) -> f64 {
    let eps = Operator::new(BlockOperator::polarization(b.window()).into_matrix());
    let op = Operator::new(b.matrix().clone());
    let curvature = eps.anticommutator(&op).add(&op.mul(&op));
    fourier_core::max_abs(curvature.matrix())
}

fn support_bandwidth(b: &BlockOperator) -> usize {
    let w = b.window();
    let zero = Complex64::new(0.0, 0.0);
    let m = b.matrix();
    let mut reach = 0i64;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m[(i, j)] != zero {
                reach = reach.max(w.mode_of(i).abs()).max(w.mode_of(j).abs());
            }
        }
    }
    (reach as usize).div_ceil(2)
}

fn is_unitary_loop(g: &LoopElement) -> bool {
    let Ok(product) = g.adjoint().product(g) else {
        return false;
    };
    let identity = LoopElement::constant(CMat::identity(g.fiber(), g.fiber()));
    product.distance(&identity) < UNITARY_LOOP_TOL
}

/// `B = M_g^{-1} [eps, M_g]`. For unitary-valued `g` the inverse is `M_{g^*}`,
/// which makes `B` exact on any window of radius at least twice the bandwidth;
/// otherwise the window inverse is used after a conditioning check.
pub fn grassmann_point(g: &LoopElement, window: ModeWindow) -> Result<GrassmannConnection> {
    let mg = toeplitz_embed(g, window)?;
    let eps = Operator::new(BlockOperator::polarization(window).into_matrix());
    let dg = eps.commutator(&Operator::new(mg.matrix().clone()));
    let inverse = if is_unitary_loop(g) {
        Operator::new(toeplitz_embed(&g.adjoint(), window)?.into_matrix())
    } else {
        let condition = condition_number(&mg);
        let bound = DEFAULT_CONDITION_BOUND;
        if condition.is_nan() || condition > bound {
            return Err(FourierError::IllConditioned { condition, bound }.into());
        }
        let inv = mg
            .matrix()
            .clone()
            .try_inverse()
            .ok_or(FourierError::IllConditioned { condition, bound })?;
        Operator::new(inv)
    };
    let b = BlockOperator::new(window, inverse.mul(&dg).matrix().clone())?.with_parity(Parity::Odd);
    let flatness_residual = flatness(&b);
    Ok(GrassmannConnection {
        b,
        source: Some(g.clone()),
        bandwidth: g.bandwidth(),
        flatness_residual,
    })
}

impl GrassmannConnection {
    /// Accepts an arbitrary odd form; flatness is measured, not required.
    pub fn from_form(b: BlockOperator) -> Self {
        let flatness_residual = flatness(&b);
        let bandwidth = support_bandwidth(&b);
        Self {
            b: b.with_parity(Parity::Odd),
            source: None,
            bandwidth,
            flatness_residual,
        }
    }

    pub fn zero(window: ModeWindow) -> Self {
        Self::from_form(BlockOperator::zeros(window))
    }

    pub fn b(&self) -> &BlockOperator {
        &self.b
    }

    pub fn window(&self) -> ModeWindow {
        self.b.window()
    }

    pub fn source(&self) -> Option<&LoopElement> {
        self.source.as_ref()
    }

    /// Bandwidth of the source loop, or half the mode reach of `B` without one.
    pub fn bandwidth(&self) -> usize {
        self.bandwidth
    }

    pub fn flatness_residual(&self) -> f64 {
        self.flatness_residual
    }

    pub fn is_flat(&self, tol: f64) -> bool {
        self.flatness_residual <= tol
    }

    /// `F = eps + B`.
    pub fn grassmannian_point(&self) -> BlockOperator {
        BlockOperator::polarization(self.window())
            .add(&self.b)
            .expect("same window")
    }
}

/// `L_X B = [B, M_X] + [eps, M_X]`.
pub fn gauge_action_on_b(conn: &GrassmannConnection, x: &LoopElement) -> Result<BlockOperator> {
    let window = conn.window();
    let mx = toeplitz_embed(x, window)?;
    let eps = BlockOperator::polarization(window);
    Ok(conn.b.commutator(&mx)?.add(&eps.commutator(&mx)?)?)
}

/// Central difference of `t -> G_t^{-1} [eps, G_t]` with `G_t = M_g exp(t M_X)`
/// built from window matrices.
pub fn gauge_action_finite_difference(
    g: &LoopElement,
    x: &LoopElement,
    window: ModeWindow,
    step: f64,
) -> Result<BlockOperator> {
    let mg = toeplitz_embed(g, window)?.into_matrix();
    let mx = toeplitz_embed(x, window)?.into_matrix();
    let eps = BlockOperator::polarization(window).into_matrix();
    let b_at = |t: f64| -> Result<CMat> {
        let gt = &mg * (&mx * Complex64::new(t, 0.0)).exp();
        let inv = gt.clone().try_inverse().ok_or(CocycleError::Fourier(
            FourierError::IllConditioned {
                condition: f64::INFINITY,
                bound: DEFAULT_CONDITION_BOUND,
            },
        ))?;
        Ok(inv * (&eps * &gt - &gt * &eps))
    };
    let diff = (b_at(step)? - b_at(-step)?) / Complex64::new(2.0 * step, 0.0);
    Ok(BlockOperator::new(window, diff)?)
}
