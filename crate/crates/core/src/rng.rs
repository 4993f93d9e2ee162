//! Seeded random streams.
//!
//! Every random decision in the crate flows from a 64-bit seed. Seeds for
//! sub-streams (per level, per simulated pair, per link) are derived with
//! a SplitMix64 finaliser so that streams never overlap in practice and
//! results do not depend on scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used by every sampler.
pub type TescRng = ChaCha8Rng;

/// Name recorded in reports so that results can be tied to a generator.
pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64+splitmix64-derivation";

pub fn rng_from_seed(seed: u64) -> TescRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Derives an independent seed from `master` and a stream tag.
pub fn derive_seed(master: u64, tag: u64) -> u64 {
    splitmix64(splitmix64(master) ^ tag.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

/// Derives a seed from a master seed and a sequence of tags.
pub fn derive_seed_path(master: u64, tags: &[u64]) -> u64 {
    tags.iter().fold(master, |s, &t| derive_seed(s, t))
}
