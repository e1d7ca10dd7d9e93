//! Deterministic RNG and hashing helpers.
//!
//! All randomness in this crate flows through ChaCha streams seeded from
//! explicit seeds, and all hashing goes through splitmix64, so results are
//! bit-identical across platforms and runs.

use rand_chacha::rand_core::RngCore;

pub(crate) fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derive an independent sub-seed from a base seed and an index.
pub fn derived_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

/// Seeded hash of a (table, id) pair, used for spatial sampling.
pub(crate) fn sample_hash(seed: u64, table: u32, id: u32) -> u64 {
    splitmix64(splitmix64(seed) ^ ((table as u64) << 32 | id as u64))
}

/// Uniform f64 in [0, 1) with 53 bits of precision.
pub(crate) fn rand01<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform u32 in [0, n) via the multiply-shift reduction.
pub(crate) fn uniform_u32<R: RngCore>(rng: &mut R, n: u32) -> u32 {
    debug_assert!(n > 0);
    ((rng.next_u64() as u128 * n as u128) >> 64) as u32
}

/// One standard normal draw (Box-Muller, cosine branch).
pub(crate) fn normal<R: RngCore>(rng: &mut R) -> f64 {
    let u1 = 1.0 - rand01(rng); // (0, 1]: keeps the log finite
    let u2 = rand01(rng);
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(2.0 * core::f64::consts::PI * u2)
}

/// In-place Fisher-Yates shuffle.
pub(crate) fn shuffle<R: RngCore, T>(rng: &mut R, items: &mut [T]) {
    for i in (1..items.len()).rev() {
        let j = uniform_u32(rng, i as u32 + 1) as usize;
        items.swap(i, j);
    }
}
