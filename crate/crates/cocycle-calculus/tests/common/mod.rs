#![allow(dead_code)]

use cocycle_calculus::{grassmann_point, Evaluator, GrassmannConnection, LieElement};
use fourier_core::sample::{gaussian_loop, one_sided_loop, rng_from_seed, unitary_loop, SeededRng};
use fourier_core::{LoopElement, ModeWindow};

pub const FIBER: usize = 2;
pub const BAND: usize = 2;

pub struct Setup {
    pub rng: SeededRng,
    pub g: LoopElement,
    pub conn: GrassmannConnection,
}

pub fn setup(seed: u64, radius: usize) -> Setup {
    let mut rng = rng_from_seed(seed);
    let g = unitary_loop(&mut rng, FIBER, BAND);
    let conn = grassmann_point(&g, ModeWindow::new(radius, FIBER).unwrap()).unwrap();
    Setup { rng, g, conn }
}

pub fn loops(rng: &mut SeededRng, count: usize) -> Vec<LoopElement> {
    (0..count)
        .map(|_| gaussian_loop(rng, FIBER, BAND, true))
        .collect()
}

pub fn one_sided(rng: &mut SeededRng, count: usize, sign: i64) -> Vec<LoopElement> {
    (0..count)
        .map(|_| one_sided_loop(rng, FIBER, BAND, sign))
        .collect()
}

pub fn elements(ev: &Evaluator, xs: &[LoopElement]) -> Vec<LieElement> {
    xs.iter().map(|x| ev.element(x).unwrap()).collect()
}

pub fn rel(a: f64, scale: f64) -> f64 {
    a / scale.max(1.0)
}
