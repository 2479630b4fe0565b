//! Seeded source of generic coefficients.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bound on the absolute value of drawn coefficients.
pub const COEFF_BOUND: i64 = 1_000_000;

/// Deterministic stream of random draws; equal seeds give equal streams.
#[derive(Clone, Debug)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    /// Creates a stream from a 64-bit seed.
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Nonzero integer in `[-COEFF_BOUND, COEFF_BOUND]`.
    pub fn coeff(&mut self) -> i64 {
        loop {
            let c = self.rng.gen_range(-COEFF_BOUND..=COEFF_BOUND);
            if c != 0 {
                return c;
            }
        }
    }

    /// Integer in the inclusive range `[lo, hi]`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// Index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    /// Fair coin with success probability `p`.
    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }
}
