use fourier_core::{BlockOperator, CMat, Complex64, ModeWindow};
use rand::Rng;

use crate::blocks::{block_decompose, BlockDecomposition};
use crate::{AnalysisError, Result};

const UNITARITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct RetractOutcome {
    /// `F(g) = h(g)^{-1} g`.
    pub retracted: BlockOperator,
    /// `x = A++ A-+^* - A+- A--^*`.
    pub x: CMat,
    pub unitarity_defect: f64,
}

fn unitarity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    fourier_core::max_abs(&(m.adjoint() * m - CMat::identity(n, n)))
}

/// Pushes a unitary toward block-diagonal form along `h_t = exp(t [[0, -x/2], [x^*/2, 0]])`;
/// `t = 1` is the retraction proper.
pub fn up_retract(g: &BlockOperator, t: f64) -> Result<RetractOutcome> {
    let defect = unitarity_defect(g.matrix());
    if defect > UNITARITY_TOL {
        return Err(AnalysisError::NotUnitary { defect });
    }
    let blocks = block_decompose(g);
    let x = &blocks.plus_plus * blocks.minus_plus.adjoint()
        - &blocks.plus_minus * blocks.minus_minus.adjoint();
    let half = Complex64::new(0.5 * t, 0.0);
    let window = g.window();
    let generator = BlockDecomposition::from_blocks(
        window,
        CMat::zeros(blocks.plus_plus.nrows(), blocks.plus_plus.ncols()),
        &x * (-half),
        x.adjoint() * half,
        CMat::zeros(blocks.minus_minus.nrows(), blocks.minus_minus.ncols()),
    )
    .reassemble();
    let h_inv = (-generator.into_matrix()).exp();
    let f = h_inv * g.matrix();
    let unitarity_defect = unitarity_defect(&f);
    Ok(RetractOutcome {
        retracted: BlockOperator::new(window, f)?,
        x,
        unitarity_defect,
    })
}

/// Window unitary `diag(U+, U-) exp([[0, b], [-b^*, 0]])` whose off-diagonal block
/// has singular values `sin(scale k^{-s})`, with `b = U diag(scale k^{-s}) V^*`
/// and Haar unitaries throughout.
pub fn offdiag_decay_unitary<R: Rng + ?Sized>(
    rng: &mut R,
    window: ModeWindow,
    s: f64,
    scale: f64,
) -> BlockOperator {
    use fourier_core::sample::random_unitary;
    let neg = window.negative_len();
    let pos = window.dim() - neg;
    let mut core = CMat::zeros(pos, neg);
    for k in 0..pos.min(neg) {
        core[(k, k)] = Complex64::new(scale * ((k + 1) as f64).powf(-s), 0.0);
    }
    let beta = random_unitary(rng, pos) * core * random_unitary(rng, neg).adjoint();
    let generator = BlockDecomposition::from_blocks(
        window,
        CMat::zeros(pos, pos),
        beta.clone(),
        -beta.adjoint(),
        CMat::zeros(neg, neg),
    )
    .reassemble();
    let rotation = BlockDecomposition::from_blocks(
        window,
        random_unitary(rng, pos),
        CMat::zeros(pos, neg),
        CMat::zeros(neg, pos),
        random_unitary(rng, neg),
    )
    .reassemble();
    let g = rotation.into_matrix() * generator.into_matrix().exp();
    BlockOperator::new(window, g).expect("sized from the window")
}

/// `exp(M)` for a window operator, unitary whenever `M` is antihermitian.
pub fn window_exponential(m: &BlockOperator) -> BlockOperator {
    BlockOperator::new(m.window(), m.matrix().exp()).expect("same window")
}
