//! Seed handling.
//!
//! Every random draw in the crate comes from a ChaCha8 generator keyed by a
//! single 64-bit seed. Independent consumers of the same seed (one per
//! experiment trial, say) take distinct ChaCha streams, so trial `i` of a run
//! sees the same bits no matter which thread executes it or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Generator for `(seed, stream)`. Stream 0 is what single-shot callers use.
pub fn stream_rng(seed: u64, stream: u64) -> Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn seeded(seed: u64) -> Rng {
    stream_rng(seed, 0)
}
