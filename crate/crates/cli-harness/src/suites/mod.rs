use std::error::Error;

use fourier_core::sample::{rng_from_seed, unitary_loop, SeededRng};
use fourier_core::LoopElement;

use crate::config::{RunConfig, Suite};
use crate::report::{Runner, VerificationReport};
use crate::Result;

mod cocycles;
mod dressed;
mod schatten;
mod spectral;
mod wzw;

/// Independent random stream `k` under the run seed.
pub(crate) fn stream(seed: u64, k: u64) -> SeededRng {
    rng_from_seed(seed.wrapping_mul(1_000_003).wrapping_add(k))
}

pub(crate) fn boxed(message: impl Into<String>) -> Box<dyn Error> {
    message.into().into()
}

/// Unitary loop of bandwidth `band` made of `band` factors `z` and `band` factors
/// `z^{-1}`. Loops with every factor of one orientation give `B` for which the
/// dressing vanishes on negative directions, so they are redrawn.
pub(crate) fn mixed_unitary_loop(rng: &mut SeededRng, fiber: usize, band: usize) -> LoopElement {
    loop {
        let g = unitary_loop(rng, fiber, 2 * band);
        if g.bandwidth() == band {
            return g;
        }
    }
}

/// Validates the budgets, then runs every member suite of `cfg.suite`.
pub fn run_suite(cfg: &RunConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let mut runner = Runner::new(cfg);
    for suite in cfg.suite.members() {
        match suite {
            Suite::Schatten => schatten::run(&mut runner),
            Suite::SpectralTriple => spectral::run(&mut runner),
            Suite::Cocycles => cocycles::run(&mut runner),
            Suite::Wzw => wzw::run(&mut runner),
            Suite::Dressed => dressed::run(&mut runner),
            Suite::All => unreachable!("expanded by members"),
        }
    }
    Ok(runner.finish())
}
