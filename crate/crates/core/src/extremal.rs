//! Maximum points of `λ(x) = Σ|λ_j(x)|`, maximal segments, minimal
//! ellipsoids of simplices and the volume constants `κ_n`, `σ_n`, `K_n`.
//!
//! For a subset `G` of `m` vertices with complement `H`, let `g`, `h` be
//! their centroids. The point `y` where the ray from `g` through `h`
//! leaves the body is a maximum point of `λ` when the body is the
//! circumscribed ball of a regular simplex (or the minimal ellipsoid of an
//! arbitrary one) and `m = k(n)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::format::vector_serde;
use crate::geometry::{AffineMap, Ball, Ellipsoid, Simplex, Vector};
use crate::norm::lambda_sum;
use crate::regular::{k_of, regular_in_unit_ball, regular_inscribed};

/// A set of `m` vertex indices, `1 ≤ m ≤ n`, stored sorted and zero-based.
/// Serialized one-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceSubset {
    indices: Vec<usize>,
    vertex_count: usize,
}

impl FaceSubset {
    /// `vertex_count` is `n + 1`.
    pub fn new(mut indices: Vec<usize>, vertex_count: usize) -> Result<Self> {
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSubset("duplicate vertex index".into()));
        }
        if *indices.last().unwrap() >= vertex_count {
            return Err(Error::InvalidSubset(format!(
                "index out of range for {vertex_count} vertices"
            )));
        }
        if indices.len() >= vertex_count {
            return Err(Error::InvalidSubset(
                "subset must leave at least one vertex in the complement".into(),
            ));
        }
        Ok(Self {
            indices,
            vertex_count,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn complement(&self) -> Vec<usize> {
        (0..self.vertex_count)
            .filter(|i| self.indices.binary_search(i).is_err())
            .collect()
    }

    /// All `m`-subsets of `vertex_count` vertices in lexicographic order.
    pub fn all(vertex_count: usize, m: usize) -> Combinations {
        Combinations::new(vertex_count, m)
    }
}

impl Serialize for FaceSubset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let one_based: Vec<usize> = self.indices.iter().map(|i| i + 1).collect();
        one_based.serialize(s)
    }
}

/// Lexicographic iterator over `m`-subsets of `{0, ..., count-1}`.
#[derive(Debug, Clone)]
pub struct Combinations {
    count: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    fn new(count: usize, m: usize) -> Self {
        let current = (m >= 1 && m < count).then(|| (0..m).collect());
        Self { count, current }
    }
}

impl Iterator for Combinations {
    type Item = FaceSubset;

    fn next(&mut self) -> Option<FaceSubset> {
        let cur = self.current.take()?;
        let m = cur.len();
        let mut next = cur.clone();
        let mut i = m;
        while i > 0 {
            i -= 1;
            if next[i] < self.count - m + i {
                next[i] += 1;
                for k in i + 1..m {
                    next[k] = next[k - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(FaceSubset {
            indices: cur,
            vertex_count: self.count,
        })
    }
}

/// Arithmetic mean of the selected vertices.
pub fn face_centroid(simplex: &Simplex, indices: &[usize]) -> Result<Vector> {
    if indices.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut c = Vector::zeros(simplex.dim());
    for &i in indices {
        if i > simplex.dim() {
            return Err(Error::InvalidSubset(format!(
                "vertex index {i} out of range"
            )));
        }
        c += simplex.vertex(i);
    }
    Ok(c / indices.len() as f64)
}

/// A ball or an ellipsoid.
#[derive(Debug, Clone, Copy)]
pub enum Body<'a> {
    Ball(&'a Ball),
    Ellipsoid(&'a Ellipsoid),
}

impl<'a> From<&'a Ball> for Body<'a> {
    fn from(b: &'a Ball) -> Self {
        Body::Ball(b)
    }
}

impl<'a> From<&'a Ellipsoid> for Body<'a> {
    fn from(e: &'a Ellipsoid) -> Self {
        Body::Ellipsoid(e)
    }
}

impl Body<'_> {
    pub fn dim(&self) -> usize {
        self.center().len()
    }

    pub fn center(&self) -> &Vector {
        match self {
            Body::Ball(b) => b.center(),
            Body::Ellipsoid(e) => e.center(),
        }
    }

    /// The quadratic form whose unit level set is the boundary, evaluated on `(u, v)`.
    fn form(&self, u: &Vector, v: &Vector) -> f64 {
        match self {
            Body::Ball(b) => u.dot(v) / (b.radius() * b.radius()),
            Body::Ellipsoid(e) => u.dot(&(e.shape_inverse() * v)),
        }
    }

    /// Gauge of `x`: at most 1 inside, exactly 1 on the boundary.
    pub fn gauge(&self, x: &Vector) -> f64 {
        let d = x - self.center();
        self.form(&d, &d).sqrt()
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.gauge(x) <= 1.0 + tol
    }
}

/// Parameter `t ≥ 0` where `origin + t·dir` crosses the boundary of `body`
/// (the larger root of the quadratic, computed without cancellation).
pub fn ray_exit(body: Body<'_>, origin: &Vector, dir: &Vector) -> Result<f64> {
    let w = origin - body.center();
    let a = body.form(dir, dir);
    let b = 2.0 * body.form(&w, dir);
    let c = body.form(&w, &w) - 1.0;
    let disc = b * b - 4.0 * a * c;
    if !(disc >= 0.0) || !(a > 0.0) {
        return Err(Error::NoIntersection { discriminant: disc });
    }
    let sq = disc.sqrt();
    let t = if b < 0.0 {
        (-b + sq) / (2.0 * a)
    } else if b + sq > 0.0 {
        -2.0 * c / (b + sq)
    } else {
        0.0
    };
    if t < 0.0 {
        return Err(Error::NoIntersection { discriminant: disc });
    }
    Ok(t)
}

/// The ray construction for one vertex subset.
#[derive(Debug, Clone, Serialize)]
pub struct MaxPointResult {
    pub subset: FaceSubset,
    #[serde(with = "vector_serde")]
    pub g: Vector,
    #[serde(with = "vector_serde")]
    pub h: Vector,
    #[serde(with = "vector_serde")]
    pub y: Vector,
    #[serde(rename = "lambdaSum")]
    pub lambda_sum_at_y: f64,
}

fn ensure_contained(simplex: &Simplex, body: Body<'_>) -> Result<()> {
    if body.dim() != simplex.dim() {
        return Err(Error::DimensionMismatch {
            expected: simplex.dim(),
            found: body.dim(),
        });
    }
    let tol = simplex.tolerances().containment;
    for (j, v) in simplex.vertices().iter().enumerate() {
        let gauge = body.gauge(v);
        if gauge > 1.0 + tol {
            return Err(Error::SimplexNotContained {
                vertex: j,
                excess: gauge - 1.0,
            });
        }
    }
    Ok(())
}

/// Centroids `g`, `h` of the subset and its complement, and the exit
/// point `y` of the ray from `g` through `h`.
pub fn max_point<'a>(
    simplex: &Simplex,
    body: impl Into<Body<'a>>,
    subset: &FaceSubset,
) -> Result<MaxPointResult> {
    let body = body.into();
    ensure_contained(simplex, body)?;
    ray_point(simplex, body, subset)
}

fn ray_point(simplex: &Simplex, body: Body<'_>, subset: &FaceSubset) -> Result<MaxPointResult> {
    let (g, h, dir) = centroid_ray(simplex, subset)?;
    let t = ray_exit(body, &g, &dir)?;
    finish_ray_point(simplex, subset, g, h, dir, t)
}

fn centroid_ray(simplex: &Simplex, subset: &FaceSubset) -> Result<(Vector, Vector, Vector)> {
    if subset.vertex_count() != simplex.dim() + 1 {
        return Err(Error::InvalidSubset(format!(
            "subset built for {} vertices, simplex has {}",
            subset.vertex_count(),
            simplex.dim() + 1
        )));
    }
    let g = face_centroid(simplex, subset.indices())?;
    let h = face_centroid(simplex, &subset.complement())?;
    let dir = &h - &g;
    let scale = g.norm().max(h.norm()).max(1.0);
    if dir.norm() <= 1e-14 * scale {
        return Err(Error::CoincidentCentroids);
    }
    Ok((g, h, dir))
}

fn finish_ray_point(
    simplex: &Simplex,
    subset: &FaceSubset,
    g: Vector,
    h: Vector,
    dir: Vector,
    t: f64,
) -> Result<MaxPointResult> {
    let y = &g + &dir * t;
    let lambda_sum_at_y = lambda_sum(simplex, &y)?;
    Ok(MaxPointResult {
        subset: subset.clone(),
        g,
        h,
        y,
        lambda_sum_at_y,
    })
}

/// Exit parameter of the ray `g + t (h - g)` from the minimal ellipsoid for
/// an `m`-subset of an `n`-simplex. Ray parameters are affine invariant, so
/// this is read off the regular simplex in `B_n`, where `|h - g|` equals
/// `(n+1) / sqrt(n m (n+1-m))` and the circumcenter splits the segment in
/// ratio `(n+1-m) : m`.
pub fn minimal_ellipsoid_exit(n: usize, m: usize) -> f64 {
    let (nf, mf) = (n as f64, m as f64);
    let rest = nf + 1.0 - mf;
    (rest + (nf * mf * rest).sqrt()) / (nf + 1.0)
}

/// The ray construction on the minimal ellipsoid of `simplex`, computed
/// without forming the ellipsoid.
pub fn minimal_ellipsoid_point(simplex: &Simplex, subset: &FaceSubset) -> Result<MaxPointResult> {
    let (g, h, dir) = centroid_ray(simplex, subset)?;
    let t = minimal_ellipsoid_exit(simplex.dim(), subset.len());
    finish_ray_point(simplex, subset, g, h, dir, t)
}

/// Ray points for every `m`-subset, in lexicographic subset order.
pub fn max_points_for<'a>(
    simplex: &Simplex,
    body: impl Into<Body<'a>>,
    m: usize,
) -> Result<Vec<MaxPointResult>> {
    let body = body.into();
    ensure_contained(simplex, body)?;
    let subsets: Vec<FaceSubset> = FaceSubset::all(simplex.dim() + 1, m).collect();
    subsets
        .par_iter()
        .map(|s| ray_point(simplex, body, s))
        .collect()
}

/// The `C(n+1, k(n))` maximum points of `λ` for the reference regular
/// simplex and its circumscribed ball. Requires `n ≥ 2`: for `n = 1`
/// every point of the ball is a maximum point.
pub fn all_max_points(n: usize) -> Result<Vec<MaxPointResult>> {
    if n < 2 {
        return Err(Error::Domain(
            "all_max_points requires n >= 2 (for n = 1 the whole ball maximizes)".into(),
        ));
    }
    let cfg = regular_inscribed(n);
    max_points_for(&cfg.simplex, &cfg.ball, k_of(n))
}

/// Whether `[p, q]` is a longest segment of its direction inside the
/// simplex: both endpoints lie in the simplex and every facet contains an
/// endpoint.
pub fn is_maximal_segment(simplex: &Simplex, p: &Vector, q: &Vector) -> Result<bool> {
    if (p - q).norm() == 0.0 {
        return Err(Error::DegeneratePoints);
    }
    let zero = simplex.tolerances().zero;
    let bp = simplex.barycentric_of(p)?;
    let bq = simplex.barycentric_of(q)?;
    let (bp, bq) = (bp.betas(), bq.betas());
    if bp.iter().chain(bq).any(|b| *b < -zero) {
        return Ok(false);
    }
    Ok(bp
        .iter()
        .zip(bq)
        .all(|(a, b)| a.abs() <= zero || b.abs() <= zero))
}

/// The affine map sending `simplex` onto the regular simplex inscribed
/// in `B_n` (vertex order preserved).
pub fn regularizing_map(simplex: &Simplex) -> Result<AffineMap> {
    let target = regular_in_unit_ball(simplex.dim());
    AffineMap::from_vertices(simplex, target.vertices())
}

/// Minimum-volume ellipsoid containing the simplex: the preimage of `B_n`
/// under the map taking the simplex to the regular simplex inscribed in `B_n`.
pub fn minimal_ellipsoid(simplex: &Simplex) -> Result<Ellipsoid> {
    let inv = regularizing_map(simplex)?.inverse()?;
    inv.apply(&Ball::unit(simplex.dim()))
}

/// `κ_n`, `σ_n` and `K_n = κ_n / σ_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VolumeConstants {
    pub n: usize,
    pub kappa: f64,
    pub sigma: f64,
    #[serde(rename = "K")]
    pub k: f64,
}

fn ln_kappa(n: usize) -> f64 {
    let nf = n as f64;
    0.5 * nf * std::f64::consts::PI.ln() - ln_gamma(0.5 * nf + 1.0)
}

fn ln_sigma(n: usize) -> f64 {
    let nf = n as f64;
    -ln_gamma(nf + 1.0) + 0.5 * (nf + 1.0).ln() + 0.5 * nf * ((nf + 1.0) / nf).ln()
}

/// `ln K_n`, finite for every `n ≥ 1` even where `K_n` overflows.
pub fn ln_volume_ratio(n: usize) -> f64 {
    ln_kappa(n) - ln_sigma(n)
}

/// `κ_n = π^{n/2} / Γ(n/2 + 1)`
pub fn unit_ball_volume(n: usize) -> f64 {
    ln_kappa(n).exp()
}

/// `σ_n = √(n+1) ((n+1)/n)^{n/2} / n!`
pub fn regular_simplex_volume(n: usize) -> f64 {
    ln_sigma(n).exp()
}

pub fn volume_constants(n: usize) -> VolumeConstants {
    assert!(n >= 1, "dimension must be at least 1");
    VolumeConstants {
        n,
        kappa: unit_ball_volume(n),
        sigma: regular_simplex_volume(n),
        k: ln_volume_ratio(n).exp(),
    }
}

/// Closed forms of `κ_n` and `K_n` specialized to even and odd `n`,
/// evaluated with plain products.
pub mod parity_forms {
    use std::f64::consts::PI;

    fn factorial(m: usize) -> f64 {
        (1..=m).map(|k| k as f64).product()
    }

    /// `κ_{2m} = π^m / m!`
    pub fn kappa_even(m: usize) -> f64 {
        PI.powi(m as i32) / factorial(m)
    }

    /// `κ_{2m+1} = 2 m! (4π)^m / (2m+1)!`
    pub fn kappa_odd(m: usize) -> f64 {
        2.0 * factorial(m) * (4.0 * PI).powi(m as i32) / factorial(2 * m + 1)
    }

    /// `K_{2m} = (2m)! (2πm)^m / (m! (2m+1)^{m+1/2})`
    pub fn k_even(m: usize) -> f64 {
        let mf = m as f64;
        factorial(2 * m) * (2.0 * PI * mf).powi(m as i32)
            / (factorial(m) * (2.0 * mf + 1.0).powf(mf + 0.5))
    }

    /// `K_{2m+1} = 2^m π^m m! (2 - 1/(m+1))^{m+1/2} / √(m+1)`
    pub fn k_odd(m: usize) -> f64 {
        let mf = m as f64;
        (2.0 * PI).powi(m as i32) * factorial(m) * (2.0 - 1.0 / (mf + 1.0)).powf(mf + 0.5)
            / (mf + 1.0).sqrt()
    }
}
