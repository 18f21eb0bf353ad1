//! Seeded random source used by every sampler.
//!
//! The generator is ChaCha with 8 rounds. The 32-byte key holds the seed as
//! little-endian bytes 0..8 followed by zeros, and the ChaCha stream id is the
//! worker index. Bounded draws use rejection on whole `u64` words, so a given
//! `(seed, stream)` pair produces the same values on every platform.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        let mut rng = ChaCha8Rng::from_seed(key);
        rng.set_stream(stream);
        Self { rng }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform value in `0..bound`. Panics if `bound == 0`.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        // Words below `reject` would bias the low residues.
        let reject = bound.wrapping_neg() % bound;
        loop {
            let x = self.rng.next_u64();
            if x >= reject {
                return x % bound;
            }
        }
    }

    /// Uniform value in `[0, 1)` with 53 random bits.
    pub fn unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
