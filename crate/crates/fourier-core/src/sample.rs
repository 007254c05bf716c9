//! Seeded random loops.
//!
//! Fourier coefficients are independent standard complex Gaussians (real and
//! imaginary parts `N(0, 1/2)`), projected to the antihermitian subspace when
//! requested, and band-limited at `bandwidth`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::{make_loop, CMat, Complex64, LoopElement};

pub type SeededRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    CMat::from_fn(n, n, |_, _| complex_gaussian(rng))
}

/// Haar-distributed unitary from the QR decomposition of a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMat {
    let qr = gaussian_matrix(rng, n).qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMat::from_diagonal(&r.diagonal().map(|z| {
        if z.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            z / z.norm()
        }
    }));
    q * phases
}

/// Gaussian loop with modes `|n| <= bandwidth`.
pub fn gaussian_loop<R: Rng + ?Sized>(
    rng: &mut R,
    fiber: usize,
    bandwidth: usize,
    antihermitian: bool,
) -> LoopElement {
    let b = bandwidth as i64;
    let mut coeffs = BTreeMap::new();
    if antihermitian {
        let a = gaussian_matrix(rng, fiber);
        coeffs.insert(0, (&a - a.adjoint()) * Complex64::new(0.5, 0.0));
        for n in 1..=b {
            let a = gaussian_matrix(rng, fiber);
            coeffs.insert(-n, -a.adjoint());
            coeffs.insert(n, a);
        }
    } else {
        for n in -b..=b {
            coeffs.insert(n, gaussian_matrix(rng, fiber));
        }
    }
    make_loop(coeffs, antihermitian).expect("constructed consistently")
}

/// Gaussian loop restricted to strictly negative (`sign < 0`) or strictly positive modes.
pub fn one_sided_loop<R: Rng + ?Sized>(
    rng: &mut R,
    fiber: usize,
    bandwidth: usize,
    sign: i64,
) -> LoopElement {
    let mut coeffs = BTreeMap::new();
    for n in 1..=bandwidth as i64 {
        coeffs.insert(sign.signum() * n, gaussian_matrix(rng, fiber));
    }
    make_loop(coeffs, false).expect("constructed consistently")
}

/// Unitary-valued band-limited loop: a product of `factors` elementary loops
/// `U_j (P_j z^{s_j} + 1 - P_j)` with Haar unitaries `U_j`, random rank-one
/// projections `P_j` and random signs `s_j`, followed by a Haar unitary.
/// The bandwidth is at most `factors`.
pub fn unitary_loop<R: Rng + ?Sized>(rng: &mut R, fiber: usize, factors: usize) -> LoopElement {
    let mut g = LoopElement::constant(random_unitary(rng, fiber));
    for _ in 0..factors {
        let v = nalgebra::DVector::from_fn(fiber, |_, _| complex_gaussian(rng));
        let v = &v / Complex64::new(v.norm(), 0.0);
        let p = &v * v.adjoint();
        let s: i64 = if rng.random::<bool>() { 1 } else { -1 };
        let mut coeffs = BTreeMap::new();
        coeffs.insert(s, p.clone());
        coeffs.insert(0, CMat::identity(fiber, fiber) - &p);
        let factor = make_loop(coeffs, false).expect("constructed consistently");
        g = g.product(&factor).expect("same fiber");
        g = g
            .product(&LoopElement::constant(random_unitary(rng, fiber)))
            .expect("same fiber");
    }
    g
}
