//! Counter-based random streams.
//!
//! Every simulated game draws from its own ChaCha8 stream, addressed by
//! `(seed, index)`: the key is derived from `seed`, the 64-bit stream id is the
//! sample index, and the block counter starts at zero. Results therefore depend
//! only on `(seed, index)` and never on how samples are spread over workers.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Derives per-sample streams from one user seed.
#[derive(Clone, Debug)]
pub struct StreamFactory {
    key: <ChaCha8Rng as SeedableRng>::Seed,
}

impl StreamFactory {
    pub fn new(seed: u64) -> Self {
        // Same key expansion as `ChaCha8Rng::seed_from_u64`.
        let mut key = <ChaCha8Rng as SeedableRng>::Seed::default();
        let base = ChaCha8Rng::seed_from_u64(seed);
        key.copy_from_slice(&base.get_seed());
        StreamFactory { key }
    }

    /// Independent stream for sample `index`.
    pub fn stream(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::from_seed(self.key);
        rng.set_stream(index);
        rng
    }
}

/// Uniform integer in `0..bound` from exactly one 64-bit draw (multiply-high).
///
/// The bias is at most `bound / 2^64`, far below anything a simulation can resolve.
#[inline]
pub fn below<R: RngCore + ?Sized>(rng: &mut R, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    ((u128::from(rng.next_u64()) * u128::from(bound)) >> 64) as u64
}
