//! Seeded randomness utilities.
//!
//! All stochastic components (candidate sampling, measurement ensembles,
//! trajectory noise) draw from ChaCha8 streams so that a `(seed, config)`
//! pair fully determines every output, independent of platform.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Deterministic generator from a 64-bit seed.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream seed from `(base, stream)`.
///
/// SplitMix64 finalizer over the pair; cheap, stateless, and well mixed, so
/// per-step and per-method substreams do not collide even for adjacent bases.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    let mut z = base ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Sample `count` distinct elements from `pool` uniformly at random, without
/// replacement, by partial Fisher-Yates. The pool is reordered in place; the
/// sample is its first `count` elements. Panics if `count > pool.len()`.
pub fn sample_without_replacement<R: Rng>(rng: &mut R, pool: &mut [usize], count: usize) {
    assert!(count <= pool.len());
    for i in 0..count {
        let j = rng.random_range(i..pool.len());
        pool.swap(i, j);
    }
}
