//! Seed handling shared by the generators, the simulation, and the harness.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// PRNG used everywhere. Streams are reproducible for a fixed seed within one build.
pub type SimRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

/// One SplitMix64 output step.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a sequence of counters into `master`: `h = splitmix64(h ^ c)` per counter.
///
/// The harness derives a cell's graph seed as
/// `derive_seed(master, &[model_code, size, repetition, 0])` and the
/// simulation seed with a trailing `1` instead of `0`. Model codes are
/// er=0, nws=1, ba_tf=2, file=3; for files `size` is the position in the file list.
pub fn derive_seed(master: u64, counters: &[u64]) -> u64 {
    counters
        .iter()
        .fold(splitmix64(master), |h, &c| splitmix64(h ^ c))
}
