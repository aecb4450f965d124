//! Counter-addressed random streams.
//!
//! A stream is identified by `(master_seed, stream_id)` and backed by a
//! ChaCha8 generator whose key is derived from the master seed and whose
//! 64-bit stream word is the stream id. Per-trial streams are obtained with
//! [`RngStream::derive`], so a trial's randomness depends only on its index
//! and never on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub master_seed: u64,
    pub stream_id: u64,
}

impl RngStream {
    pub const fn new(master_seed: u64, stream_id: u64) -> Self {
        Self {
            master_seed,
            stream_id,
        }
    }

    /// Child stream for sub-task `index` (trial, row, sample, ...).
    pub fn derive(&self, index: u64) -> Self {
        let id = mix64(self.stream_id ^ mix64(index.wrapping_add(0x5851_f42d_4c95_7f2d)));
        Self::new(self.master_seed, id)
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_id);
        rng
    }
}
