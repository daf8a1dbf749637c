//! Shared fixtures for the benchmarks.

use rand_chacha::ChaCha8Rng;
use rnashapes::sampler::sample_rng;

/// Seed shared by every benchmark.
pub const SEED: u64 = 0xbe4c;

/// Deterministic generator for the `i`-th benchmark iteration.
pub fn bench_rng(i: u64) -> ChaCha8Rng {
    sample_rng(SEED, i)
}
