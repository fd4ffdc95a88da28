//! Fixed inputs shared by the benchmarks.

use simplex_ball::sampling::{random_simplex, rng_for};
use simplex_ball::{Simplex, Tolerances, VertexSampler};

/// A reproducible random simplex in the unit ball.
pub fn fixture_simplex(n: usize, seed: u64) -> Simplex {
    let mut rng = rng_for(seed, n as u64);
    random_simplex(
        n,
        VertexSampler::UniformBall,
        &mut rng,
        Tolerances::default(),
    )
    .0
}
