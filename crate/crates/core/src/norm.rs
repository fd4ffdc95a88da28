//! Norms of linear interpolation projectors over balls and ellipsoids.
//!
//! For a simplex with inverse vertex matrix `L = (l_ij)` and a ball
//! `B(x0; R)` the norm is
//!
//! ```text
//! ‖P‖_B = max_{f ∈ {±1}^{n+1}}  R · ‖(Σ_j f_j l_ij)_i‖ + |Σ_j f_j λ_j(x0)|.
//! ```
//!
//! Both terms are even in `f`, so `f_{n+1} = +1` is fixed and the
//! remaining `2^n` sign classes are enumerated in Gray-code order; each
//! step flips one sign and updates the partial sums in `O(n)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::vector_serde;
use crate::geometry::{AffineMap, Ball, Ellipsoid, Simplex, Vector};
use crate::sampling::uniform_on_sphere;

/// Largest dimension accepted by the exact enumeration.
pub const MAX_ENUMERATION_DIM: usize = 30;

/// Largest dimension for which the per-class value table is kept.
pub const MAX_TABLE_DIM: usize = 12;

/// Sign classes handled by one work unit. The chunking is fixed so the
/// floating-point path, and therefore the result, does not depend on the
/// number of worker threads.
const CHUNK_BITS: usize = 12;

/// A vector of signs `f_j ∈ {+1, -1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().all(|s| *s == 1 || *s == -1) {
            Ok(Self(signs))
        } else {
            Err(Error::InvalidInput("sign entries must be +1 or -1".into()))
        }
    }

    /// Bit `j` of `mask` set means `f_j = -1`; the last entry is `+1`.
    fn from_mask(mask: u64, n: usize) -> Self {
        let mut signs: Vec<i8> = (0..n)
            .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
            .collect();
        signs.push(1);
        Self(signs)
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    pub fn negated(&self) -> Self {
        Self(self.0.iter().map(|s| -s).collect())
    }
}

impl TryFrom<Vec<i8>> for SignVector {
    type Error = Error;
    fn try_from(v: Vec<i8>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SignVector> for Vec<i8> {
    fn from(s: SignVector) -> Self {
        s.0
    }
}

/// Result of an exact norm computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormReport {
    pub norm: f64,
    /// Signs of an extremal class, oriented so that `Σ f_j λ_j(argmax) = norm`.
    pub signs: SignVector,
    /// A boundary point where `Σ |λ_j|` attains the norm.
    #[serde(with = "vector_serde")]
    pub argmax: Vector,
    /// Value of every sign class indexed by its mask (only for `n ≤ 12` on request).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub per_sign_values: Option<Vec<f64>>,
}

/// Precomputed data for evaluating one sign class.
struct SignProblem {
    n: usize,
    radius: f64,
    /// `gradients[j]` is `(l_1j, ..., l_nj)`.
    gradients: Vec<Vec<f64>>,
    /// `λ_j(x0)`
    at_center: Vec<f64>,
}

impl SignProblem {
    fn new(simplex: &Simplex, ball: &Ball) -> Result<Self> {
        let n = simplex.dim();
        if ball.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: ball.dim(),
            });
        }
        if n > MAX_ENUMERATION_DIM {
            return Err(Error::DimensionTooLarge {
                n,
                max: MAX_ENUMERATION_DIM,
            });
        }
        let l = simplex.inverse();
        let gradients = (0..=n)
            .map(|j| (0..n).map(|i| l[(i, j)]).collect())
            .collect();
        let at_center = (0..=n)
            .map(|j| simplex.lagrange(j, ball.center()))
            .collect();
        Ok(Self {
            n,
            radius: ball.radius(),
            gradients,
            at_center,
        })
    }

    /// Partial sums `(Σ_j f_j l_ij, Σ_j f_j λ_j(x0))` for the class `mask`.
    fn sums(&self, mask: u64) -> (Vec<f64>, f64) {
        let mut grad = vec![0.0; self.n];
        let mut offset = 0.0;
        for j in 0..=self.n {
            let f = if j < self.n && mask >> j & 1 == 1 {
                -1.0
            } else {
                1.0
            };
            for (g, l) in grad.iter_mut().zip(&self.gradients[j]) {
                *g += f * l;
            }
            offset += f * self.at_center[j];
        }
        (grad, offset)
    }

    fn value(&self, grad: &[f64], offset: f64) -> f64 {
        self.radius * grad.iter().map(|g| g * g).sum::<f64>().sqrt() + offset.abs()
    }

    /// Walks the sign classes `chunk << low_bits ..` in Gray-code order,
    /// calling `visit(mask, value)` for each.
    fn walk_chunk(&self, chunk: u64, low_bits: usize, mut visit: impl FnMut(u64, f64)) {
        let base = chunk << low_bits;
        let (mut grad, mut offset) = self.sums(base);
        let mut mask = base;
        visit(mask, self.value(&grad, offset));
        for step in 1u64..(1u64 << low_bits) {
            let j = step.trailing_zeros() as usize;
            mask ^= 1 << j;
            // New sign of f_j after the flip; the change is 2 * f_j * column j.
            let f = if mask >> j & 1 == 1 { -2.0 } else { 2.0 };
            for (g, l) in grad.iter_mut().zip(&self.gradients[j]) {
                *g += f * l;
            }
            offset += f * self.at_center[j];
            visit(mask, self.value(&grad, offset));
        }
    }

    fn layout(&self) -> (usize, u64) {
        let low_bits = self.n.min(CHUNK_BITS);
        (low_bits, 1u64 << (self.n - low_bits))
    }
}

/// `a` precedes `b` when, at the first differing sign, `a` has `-1`.
fn lex_less(a: u64, b: u64) -> bool {
    let diff = a ^ b;
    diff != 0 && a >> diff.trailing_zeros() & 1 == 1
}

fn better(cand: (f64, u64), best: (f64, u64)) -> bool {
    cand.0 > best.0 || (cand.0 == best.0 && lex_less(cand.1, best.1))
}

fn report(problem: &SignProblem, center: &Vector, best_mask: u64, best_value: f64) -> NormReport {
    let n = problem.n;
    let (grad, offset) = problem.sums(best_mask);
    let grad = Vector::from_vec(grad);
    let gnorm = grad.norm();
    let orientation = if offset < 0.0 { -1.0 } else { 1.0 };
    let argmax = if gnorm > 0.0 {
        center + &grad * (orientation * problem.radius / gnorm)
    } else {
        center.clone()
    };
    let signs = SignVector::from_mask(best_mask, n);
    NormReport {
        norm: best_value,
        signs: if orientation < 0.0 {
            signs.negated()
        } else {
            signs
        },
        argmax,
        per_sign_values: None,
    }
}

/// Exact projector norm over a ball.
pub fn norm_on_ball(simplex: &Simplex, ball: &Ball) -> Result<NormReport> {
    let problem = SignProblem::new(simplex, ball)?;
    let (low_bits, chunks) = problem.layout();
    let (value, mask) = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut best = (f64::NEG_INFINITY, u64::MAX);
            problem.walk_chunk(chunk, low_bits, |mask, value| {
                if best.1 == u64::MAX || better((value, mask), best) {
                    best = (value, mask);
                }
            });
            best
        })
        .reduce(
            || (f64::NEG_INFINITY, u64::MAX),
            |a, b| {
                if a.1 == u64::MAX || (b.1 != u64::MAX && better(b, a)) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(report(&problem, ball.center(), mask, value))
}

/// Like [`norm_on_ball`], also recording the value of every sign class
/// (indexed by mask, bit `j` set meaning `f_j = -1`) when `n ≤ 12`.
pub fn norm_on_ball_with_table(simplex: &Simplex, ball: &Ball) -> Result<NormReport> {
    let mut rep = norm_on_ball(simplex, ball)?;
    let n = simplex.dim();
    if n <= MAX_TABLE_DIM {
        let problem = SignProblem::new(simplex, ball)?;
        let mut table = vec![0.0; 1 << n];
        problem.walk_chunk(0, n, |mask, value| table[mask as usize] = value);
        rep.per_sign_values = Some(table);
    }
    Ok(rep)
}

/// `Σ_j |λ_j(x)|`
pub fn lambda_sum(simplex: &Simplex, x: &Vector) -> Result<f64> {
    Ok(simplex.lagrange_all(x)?.iter().map(|l| l.abs()).sum())
}

/// Lower estimate of the norm from boundary samples.
///
/// Evaluates `Σ |λ_j|` at `samples` uniform points of the sphere `∂B` and
/// at the `2(n+1)` points `x0 ± R u_j`, `u_j` the unit direction from the
/// center towards vertex `j`.
pub fn norm_sampled(simplex: &Simplex, ball: &Ball, samples: usize, seed: u64) -> Result<f64> {
    let n = simplex.dim();
    if ball.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ball.dim(),
        });
    }
    let c = ball.center();
    let r = ball.radius();
    let mut best = f64::NEG_INFINITY;
    for v in simplex.vertices() {
        let d = v - c;
        let len = d.norm();
        if len > 0.0 {
            for s in [1.0, -1.0] {
                best = best.max(lambda_sum(simplex, &(c + &d * (s * r / len)))?);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let u = uniform_on_sphere(n, &mut rng);
        best = best.max(lambda_sum(simplex, &(c + u * r))?);
    }
    Ok(best)
}

/// Exact projector norm over an ellipsoid containing the simplex.
///
/// The ellipsoid is mapped onto the unit ball by `u = F^{-1}(x - c)` with
/// `Q = F F^T`; the norm is affine invariant, so it is computed there and
/// the maximizer is mapped back.
pub fn norm_on_ellipsoid(simplex: &Simplex, ellipsoid: &Ellipsoid) -> Result<NormReport> {
    let n = simplex.dim();
    if ellipsoid.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ellipsoid.dim(),
        });
    }
    let tol = simplex.tolerances().containment;
    for (j, v) in simplex.vertices().iter().enumerate() {
        let gauge = ellipsoid.gauge_sq(v).sqrt();
        if gauge > 1.0 + tol {
            return Err(Error::SimplexNotContained {
                vertex: j,
                excess: gauge - 1.0,
            });
        }
    }
    let to_ball = AffineMap::new(ellipsoid.factor().clone(), ellipsoid.center().clone())?;
    let from_ball = to_ball
        .inverse()
        .map_err(|_| Error::DegenerateEllipsoid("shape factor is singular".into()))?;
    let image = from_ball.apply(simplex)?;
    let mut rep = norm_on_ball(&image, &Ball::unit(n))?;
    rep.argmax = to_ball.apply_point(&rep.argmax);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::regular::{regular_inscribed, regular_norm};

    /// Direct evaluation over all `2^{n+1}` sign vectors, no Gray code.
    fn brute_force(simplex: &Simplex, ball: &Ball) -> f64 {
        let n = simplex.dim();
        let l = simplex.inverse();
        let mut best = f64::NEG_INFINITY;
        for mask in 0u64..(1 << (n + 1)) {
            let f: Vec<f64> = (0..=n)
                .map(|j| if mask >> j & 1 == 1 { -1.0 } else { 1.0 })
                .collect();
            let grad: f64 = (0..n)
                .map(|i| (0..=n).map(|j| f[j] * l[(i, j)]).sum::<f64>().powi(2))
                .sum::<f64>()
                .sqrt();
            let off: f64 = (0..=n)
                .map(|j| f[j] * simplex.lagrange(j, ball.center()))
                .sum();
            best = best.max(ball.radius() * grad + off.abs());
        }
        best
    }

    #[test]
    fn unit_segment() {
        let s = Simplex::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        let ball = Ball::new(Vector::from_row_slice(&[0.5]), 0.5).unwrap();
        let rep = norm_on_ball(&s, &ball).unwrap();
        assert!((rep.norm - 1.0).abs() < 1e-14);
        for x in [0.0, 0.25, 0.9, 1.0] {
            assert!((lambda_sum(&s, &Vector::from_row_slice(&[x])).unwrap() - 1.0).abs() < 1e-14);
        }
        assert!((norm_sampled(&s, &ball, 50, 1).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn matches_brute_force_on_fixed_simplex() {
        let s = Simplex::from_rows(&[
            vec![0.3, -0.1, 0.2],
            vec![-0.5, 0.4, 0.1],
            vec![0.2, 0.6, -0.3],
            vec![0.1, -0.2, -0.7],
        ])
        .unwrap();
        let ball = Ball::unit(3);
        let rep = norm_on_ball(&s, &ball).unwrap();
        assert!((rep.norm - brute_force(&s, &ball)).abs() < 1e-12);
        assert!(((&rep.argmax - ball.center()).norm() - 1.0).abs() < 1e-12);
        assert!((lambda_sum(&s, &rep.argmax).unwrap() - rep.norm).abs() < 1e-10);
        let dot: f64 = rep
            .signs
            .signs()
            .iter()
            .enumerate()
            .map(|(j, f)| *f as f64 * s.lagrange(j, &rep.argmax))
            .sum();
        assert!((dot - rep.norm).abs() < 1e-10);
    }

    #[test]
    fn table_covers_every_class() {
        let cfg = regular_inscribed(4);
        let rep = norm_on_ball_with_table(&cfg.simplex, &cfg.ball).unwrap();
        let table = rep.per_sign_values.as_ref().unwrap();
        assert_eq!(table.len(), 16);
        let max = table.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(max, rep.norm);
        assert!((rep.norm - regular_norm(4)).abs() < 1e-10);
    }

    #[test]
    fn lambda_sum_is_one_on_the_simplex() {
        let cfg = regular_inscribed(3);
        for v in cfg.simplex.vertices() {
            assert!((lambda_sum(&cfg.simplex, v).unwrap() - 1.0).abs() < 1e-12);
        }
        assert!((lambda_sum(&cfg.simplex, &cfg.simplex.centroid()).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn dimension_guard() {
        let n = 31;
        let s = crate::regular::regular_in_unit_ball(n);
        assert!(matches!(
            norm_on_ball(&s, &Ball::unit(n)),
            Err(Error::DimensionTooLarge { n: 31, max: 30 })
        ));
        let s2 = crate::regular::regular_in_unit_ball(2);
        assert!(matches!(
            norm_on_ball(&s2, &Ball::unit(3)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ellipsoid_equal_to_ball() {
        let cfg = regular_inscribed(3);
        let a = norm_on_ball(&cfg.simplex, &cfg.ball).unwrap();
        let b = norm_on_ellipsoid(&cfg.simplex, &cfg.ball.to_ellipsoid()).unwrap();
        assert!((a.norm - b.norm).abs() < 1e-12);
        // The regular simplex has several maximizers; check b's is one of them.
        assert!((lambda_sum(&cfg.simplex, &b.argmax).unwrap() - a.norm).abs() < 1e-10);
        assert!(((&b.argmax - cfg.ball.center()).norm() - cfg.ball.radius()).abs() < 1e-10);
    }

    #[test]
    fn simplex_outside_ellipsoid() {
        let s = Simplex::from_rows(&[vec![2.0, 0.0], vec![0.0, 0.5], vec![0.0, 0.0]]).unwrap();
        let err = norm_on_ellipsoid(&s, &Ball::unit(2).to_ellipsoid()).unwrap_err();
        assert!(matches!(err, Error::SimplexNotContained { vertex: 0, .. }));
        assert!(err.to_string().contains("SimplexNotContained"));
    }

    #[test]
    fn report_json() {
        let s = Simplex::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        let ball = Ball::new(Vector::from_row_slice(&[0.5]), 0.5).unwrap();
        let rep = norm_on_ball(&s, &ball).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        assert!(json.get("norm").is_some());
        assert_eq!(json["signs"].as_array().unwrap().len(), 2);
        assert_eq!(json["argmax"].as_array().unwrap().len(), 1);
        assert!(json.get("per_sign_values").is_none());
    }

    #[test]
    fn sign_vector_validation() {
        assert!(SignVector::new(vec![1, -1, 1]).is_ok());
        assert!(SignVector::new(vec![1, 0]).is_err());
        assert_eq!(SignVector::from_mask(0b01, 2).signs(), &[-1, 1, 1]);
        assert!(lex_less(0b01, 0b00));
        assert!(!lex_less(0b10, 0b01));
    }
}
