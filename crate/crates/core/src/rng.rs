//! Seed plumbing. Every randomized step draws from its own ChaCha stream
//! derived from the user seed and a stage tag, so stages stay reproducible
//! independently of one another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// splitmix64 finalizer.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive(seed: u64, tag: u64) -> u64 {
    mix(seed ^ mix(tag))
}

pub fn stream(seed: u64, tag: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(derive(seed, tag))
}
