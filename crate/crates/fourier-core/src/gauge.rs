use crate::{
    diagonal_operator, toeplitz_embed, BlockOperator, DiagonalKind, FourierError, LoopElement,
    ModeWindow, Result,
};

/// Condition-number ceiling for treating a window multiplication operator as invertible.
pub const DEFAULT_CONDITION_BOUND: f64 = 1e8;

/// `A = M_alpha [D^q, M_beta]`.
pub fn ym_connection(
    alpha: &LoopElement,
    beta: &LoopElement,
    q: f64,
    window: ModeWindow,
) -> Result<BlockOperator> {
    let dq = diagonal_operator(DiagonalKind::FracDirac(q), window)?;
    let m_alpha = toeplitz_embed(alpha, window)?;
    let m_beta = toeplitz_embed(beta, window)?;
    m_alpha.mul(&dq.commutator(&m_beta)?)
}

/// Ratio of extreme singular values; infinite for singular input.
pub fn condition_number(m: &BlockOperator) -> f64 {
    let sv = m.matrix().singular_values();
    let max = sv.iter().cloned().fold(0.0, f64::max);
    let min = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// `A^g = M_g^{-1} A M_g + M_g^{-1} [D^q, M_g]` using the window inverse of `M_g`.
pub fn gauge_transform(
    a: &BlockOperator,
    g: &LoopElement,
    q: f64,
    bound: f64,
) -> Result<BlockOperator> {
    let window = a.window();
    let mg = toeplitz_embed(g, window)?;
    let condition = condition_number(&mg);
    if condition.is_nan() || condition > bound {
        return Err(FourierError::IllConditioned { condition, bound });
    }
    let inv = mg
        .matrix()
        .clone()
        .try_inverse()
        .ok_or(FourierError::IllConditioned {
            condition: f64::INFINITY,
            bound,
        })?;
    let inv = BlockOperator::new(window, inv)?;
    let dq = diagonal_operator(DiagonalKind::FracDirac(q), window)?;
    let conj = inv.mul(&a.mul(&mg)?)?;
    conj.add(&inv.mul(&dq.commutator(&mg)?)?)
}

/// Infinitesimal gauge action `L_X A = [A, X] + [D^q, X]`.
pub fn infinitesimal_gauge(a: &BlockOperator, x: &LoopElement, q: f64) -> Result<BlockOperator> {
    let window = a.window();
    let mx = toeplitz_embed(x, window)?;
    let dq = diagonal_operator(DiagonalKind::FracDirac(q), window)?;
    a.commutator(&mx)?.add(&dq.commutator(&mx)?)
}
