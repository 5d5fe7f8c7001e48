//! Reproducible random streams.
//!
//! A stream is identified by `(seed, stream_id)` and backed by ChaCha8, whose
//! output is specified independently of platform and word size. Parallel
//! callers derive disjoint sub-streams instead of sharing one generator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngStream {
    pub seed: u64,
    pub stream_id: u64,
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        RngStream { seed, stream_id: 0 }
    }

    pub fn with_stream(seed: u64, stream_id: u64) -> Self {
        RngStream { seed, stream_id }
    }

    /// Fresh generator positioned at the start of this stream.
    pub fn generator(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream_id);
        rng
    }

    /// Child stream keyed by `index`. Distinct indices give distinct streams;
    /// the same `(self, index)` always gives the same child.
    pub fn substream(&self, index: u64) -> RngStream {
        RngStream {
            seed: self.seed,
            stream_id: splitmix64(splitmix64(self.stream_id) ^ index),
        }
    }
}
