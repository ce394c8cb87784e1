//! Deterministic random streams.
//!
//! The optimizers only ever ask for two primitives: a uniform real in the
//! unit interval and a uniform index below some bound. Keeping the surface
//! that small lets tests substitute scripted sources.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub trait RandomSource {
    /// Uniform draw in `[0, 1)`.
    fn uniform(&mut self) -> f64;

    /// Uniform index in `0..n`. `n` must be positive.
    fn index(&mut self, n: usize) -> usize;
}

impl<R: RandomSource + ?Sized> RandomSource for &mut R {
    fn uniform(&mut self) -> f64 {
        (**self).uniform()
    }

    fn index(&mut self, n: usize) -> usize {
        (**self).index(n)
    }
}

/// ChaCha8 stream; identical seeds give identical streams on every platform.
#[derive(Clone, Debug)]
pub struct SeededRng(ChaCha8Rng);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self(ChaCha8Rng::seed_from_u64(seed))
    }
}

impl RandomSource for SeededRng {
    fn uniform(&mut self) -> f64 {
        self.0.random::<f64>()
    }

    fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        self.0.random_range(0..n)
    }
}
