//! Fixed inputs shared by the benchmarks.

use chibound_core::census::sample_star_free;
use chibound_core::{Graph, Pattern};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` seeded random bull*-free graphs on `n` vertices.
pub fn bull_free_samples(count: usize, n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bull = Pattern::bull();
    (0..count)
        .map(|_| sample_star_free(&bull, n, &mut rng, 10_000).expect("within the guard").expect("a sample is found"))
        .collect()
}
