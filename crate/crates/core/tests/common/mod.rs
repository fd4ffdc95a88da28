//! Test-only oracles and random instance generators.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use simplex_ball::sampling::{random_simplex, rng_for, uniform_in_ball};
use simplex_ball::{AffineMap, Ball, Simplex, Tolerances, Vector, VertexSampler};

pub fn rng(seed: u64, index: u64) -> ChaCha8Rng {
    rng_for(seed, index)
}

pub fn random_simplex_in_unit_ball(n: usize, rng: &mut ChaCha8Rng) -> Simplex {
    random_simplex(n, VertexSampler::UniformBall, rng, Tolerances::default()).0
}

/// A random ball and a random simplex inside it.
pub fn random_simplex_in_random_ball(n: usize, rng: &mut ChaCha8Rng) -> (Simplex, Ball) {
    let center = Vector::from_fn(n, |_, _| rng.random_range(-3.0..3.0));
    let radius = rng.random_range(0.2..4.0);
    let unit = random_simplex_in_unit_ball(n, rng);
    let vertices = unit
        .vertices()
        .iter()
        .map(|v| &center + v * radius)
        .collect();
    (
        Simplex::new(vertices).unwrap(),
        Ball::new(center, radius).unwrap(),
    )
}

/// A random affine map with a moderately conditioned linear part.
pub fn random_affine(n: usize, rng: &mut ChaCha8Rng) -> AffineMap {
    loop {
        let a = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
        let svd = a.clone().svd(false, false);
        let smax = svd.singular_values.max();
        let smin = svd.singular_values.min();
        if smin > 0.0 && smax / smin < 50.0 {
            let b = DVector::from_fn(n, |_, _| rng.random_range(-2.0..2.0));
            return AffineMap::new(a, b).unwrap();
        }
    }
}

pub fn random_point_in_ball(ball: &Ball, rng: &mut ChaCha8Rng) -> Vector {
    ball.center() + uniform_in_ball(ball.dim(), rng) * ball.radius()
}

/// Minimum-volume enclosing ellipsoid of a point set by Khachiyan's
/// barycentric coordinate ascent. Returns `(center, shape)` with the
/// ellipsoid `(x - c)^T shape^{-1} (x - c) ≤ 1`.
///
/// The weights start away from uniform so the iteration does real work
/// even for simplices, where the uniform weights are already optimal.
pub fn khachiyan_mvee(points: &[Vector], tol: f64) -> (Vector, DMatrix<f64>) {
    let d = points[0].len();
    let count = points.len();
    let q = DMatrix::from_fn(d + 1, count, |i, j| if i < d { points[j][i] } else { 1.0 });
    let total: f64 = (1..=count).map(|j| j as f64).sum();
    let mut u = DVector::from_fn(count, |j, _| (j + 1) as f64 / total);
    for _ in 0..10_000_000 {
        let x = &q * DMatrix::from_diagonal(&u) * q.transpose();
        let x_inv = x.try_inverse().expect("lifted points span R^{d+1}");
        let m = DVector::from_fn(count, |j, _| {
            let col = q.column(j);
            col.dot(&(&x_inv * col))
        });
        let (jmax, mmax) = m.argmax();
        let step = (mmax - d as f64 - 1.0) / ((d as f64 + 1.0) * (mmax - 1.0));
        let mut next = &u * (1.0 - step);
        next[jmax] += step;
        let err = (&next - &u).norm();
        u = next;
        if err < tol {
            break;
        }
    }
    let p = DMatrix::from_fn(d, count, |i, j| points[j][i]);
    let center = &p * &u;
    let scatter = &p * DMatrix::from_diagonal(&u) * p.transpose() - &center * center.transpose();
    (center, scatter * d as f64)
}
