//! Seeded random points, simplices and seed splitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{Simplex, Vector};
use crate::tolerance::Tolerances;

/// Uniform direction on the unit sphere `S^{n-1}` (normalized Gaussian).
pub fn uniform_on_sphere<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector {
    loop {
        let v = Vector::from_fn(n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let len = v.norm();
        if len > 1e-300 {
            return v / len;
        }
    }
}

/// Uniform point of the closed unit ball `B_n`: a uniform direction
/// scaled by `U^{1/n}`.
pub fn uniform_in_ball<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vector {
    let u: f64 = rng.random();
    uniform_on_sphere(n, rng) * u.powf(1.0 / n as f64)
}

/// splitmix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th independent stream derived from `seed`.
pub fn split_seed(seed: u64, index: u64) -> u64 {
    seed ^ mix64(index)
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(split_seed(seed, index))
}

/// Distribution of vertices for random simplices in the unit ball.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexSampler {
    /// i.i.d. uniform in `B_n`.
    #[default]
    UniformBall,
    /// Radius `U^{1/(4n)}`, which concentrates vertices near the sphere.
    BoundaryBiased,
}

impl VertexSampler {
    pub fn sample<R: Rng + ?Sized>(self, n: usize, rng: &mut R) -> Vector {
        match self {
            Self::UniformBall => uniform_in_ball(n, rng),
            Self::BoundaryBiased => {
                let u: f64 = rng.random();
                uniform_on_sphere(n, rng) * u.powf(1.0 / (4 * n) as f64)
            }
        }
    }
}

impl std::fmt::Display for VertexSampler {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::UniformBall => "uniform-ball",
            Self::BoundaryBiased => "boundary-biased",
        })
    }
}

impl std::str::FromStr for VertexSampler {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "uniform-ball" => Ok(Self::UniformBall),
            "boundary-biased" => Ok(Self::BoundaryBiased),
            other => Err(Error::InvalidInput(format!("unknown sampler '{other}'"))),
        }
    }
}

/// Draws vertices until the simplex is nondegenerate; returns the simplex
/// and the number of rejected draws.
pub fn random_simplex<R: Rng + ?Sized>(
    n: usize,
    sampler: VertexSampler,
    rng: &mut R,
    tol: Tolerances,
) -> (Simplex, usize) {
    let mut rejected = 0;
    loop {
        let vertices = (0..=n).map(|_| sampler.sample(n, rng)).collect();
        match Simplex::with_tolerances(vertices, tol) {
            Ok(s) => return (s, rejected),
            Err(_) => rejected += 1,
        }
    }
}
