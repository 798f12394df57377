//! Seeded deterministic randomness.
//!
//! Every randomized choice in the crate flows through [`DetRng`] so that a
//! run is fully determined by its seed, on any platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic random source, cheap to fork per work item.
#[derive(Clone, Debug)]
pub struct DetRng {
    seed: u64,
    rng: ChaCha8Rng,
}

impl DetRng {
    pub fn seed_from_u64(seed: u64) -> Self {
        DetRng {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Independent stream for work item `index`, derived from the original
    /// seed alone: forking does not depend on how much the parent has drawn.
    pub fn fork(&self, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index.wrapping_add(1));
        DetRng {
            seed: self.seed,
            rng,
        }
    }

    pub fn range_u32(&mut self, bound: u32) -> u32 {
        debug_assert!(bound > 0);
        self.rng.random_range(0..bound)
    }

    pub fn range_i64(&mut self, low: i64, high_inclusive: i64) -> i64 {
        self.rng.random_range(low..=high_inclusive)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random()
    }

    pub fn u64(&mut self) -> u64 {
        self.rng.random()
    }
}
