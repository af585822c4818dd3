//! Seed derivation shared by every stochastic component.
//!
//! All randomness flows from a single `u64` through [`derive_seed`], so a run
//! is reproducible from its configuration alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used everywhere in the crate. ChaCha output is stable across
/// platforms and `rand` releases.
pub type Rng = ChaCha8Rng;

pub const fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Child seed for stream `index` of `seed`. Distinct `(seed, index)` pairs
/// give unrelated streams.
pub const fn derive_seed(seed: u64, index: u64) -> u64 {
    splitmix64(splitmix64(seed) ^ index)
}

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
