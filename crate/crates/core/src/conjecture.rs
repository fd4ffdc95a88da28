//! Stress tests of the ray-point conjecture and a local-search estimate
//! of the minimal projector norm `θ_n(B_n)`.
//!
//! For a simplex `S ⊂ B_n` and `m ≤ n/2`, every `m`-subset of vertices
//! gives a ray point `y` on the boundary of the minimal ellipsoid of `S`
//! (see [`crate::extremal`]). The conjecture asserts that some subset
//! puts `y` inside `B_n`. For `m = 1` it is a theorem: `y = 2c - x^(j)`
//! and some vertex satisfies `‖2c - x^(j)‖ ≤ 1`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extremal::{minimal_ellipsoid_point, FaceSubset};
use crate::format::vector_serde;
use crate::geometry::{Ball, Simplex, Vector};
use crate::norm::norm_on_ball;
use crate::regular::{binomial_exact, regular_in_unit_ball};
use crate::sampling::{random_simplex, rng_for, uniform_in_ball, VertexSampler};
use crate::tolerance::Tolerances;

/// Upper limit on the number of subsets enumerated by [`h1_check`].
pub const MAX_SUBSETS: u64 = 10_000_000;

/// Ray point of `subset` on the boundary of the minimal ellipsoid of `simplex`.
/// Requires `2 |subset| ≤ n`.
pub fn h1_point(simplex: &Simplex, subset: &FaceSubset) -> Result<Vector> {
    let n = simplex.dim();
    if 2 * subset.len() > n {
        return Err(Error::Domain(format!(
            "subset size {} exceeds n/2 = {}",
            subset.len(),
            n as f64 / 2.0
        )));
    }
    Ok(minimal_ellipsoid_point(simplex, subset)?.y)
}

/// `min_j ‖2c - x^(j)‖`, the distance from the origin of the closest
/// reflected vertex. At most 1 for every simplex in `B_n`.
pub fn min_reflected_norm(simplex: &Simplex) -> f64 {
    let c2 = simplex.centroid() * 2.0;
    simplex
        .vertices()
        .iter()
        .map(|v| (&c2 - v).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Outcome of checking one simplex.
#[derive(Debug, Clone, Serialize)]
pub struct H1Check {
    pub satisfied: bool,
    /// `radius - min_subsets ‖y - center‖`; negative when every ray point is outside.
    pub slack: f64,
    pub best_subset: FaceSubset,
    #[serde(with = "vector_serde")]
    pub best_point: Vector,
}

/// Enumerates all `C(n+1, m)` subsets and reports the ray point closest to
/// the ball center. `m` may exceed `n/2` for exploration.
pub fn h1_check(simplex: &Simplex, m: usize, ball: &Ball) -> Result<H1Check> {
    let n = simplex.dim();
    if ball.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: ball.dim(),
        });
    }
    if m == 0 || m > n {
        return Err(Error::Domain(format!(
            "subset size m = {m} must lie in 1..={n}"
        )));
    }
    let count = binomial_exact(n as u64 + 1, m as u64);
    if count > MAX_SUBSETS.into() {
        return Err(Error::SubsetCountTooLarge {
            count: count.to_string(),
            limit: MAX_SUBSETS,
        });
    }
    let tol = simplex.tolerances();
    for (j, v) in simplex.vertices().iter().enumerate() {
        let excess = (v - ball.center()).norm() - ball.radius();
        if excess > tol.containment {
            return Err(Error::SimplexNotContained { vertex: j, excess });
        }
    }
    let subsets: Vec<FaceSubset> = FaceSubset::all(n + 1, m).collect();
    let points = subsets
        .par_iter()
        .map(|s| minimal_ellipsoid_point(simplex, s))
        .collect::<Result<Vec<_>>>()?;
    let best = points
        .into_iter()
        .map(|p| {
            let dist = (&p.y - ball.center()).norm();
            (dist, p)
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("at least one subset");
    let slack = ball.radius() - best.0;
    Ok(H1Check {
        satisfied: slack >= -tol.slack,
        slack,
        best_subset: best.1.subset,
        best_point: best.1.y,
    })
}

/// A simplex for which every ray point left the ball.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct H1Failure {
    pub trial: usize,
    pub slack: f64,
    pub simplex: Simplex,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct H1Report {
    pub n: usize,
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
    pub sampler: VertexSampler,
    pub failures: Vec<H1Failure>,
    /// Smallest slack over all trials.
    pub min_slack: f64,
    pub satisfied_all: bool,
    /// Degenerate draws that were discarded and redrawn.
    pub rejections: usize,
    /// Trials whose best ray point is strictly inside the ball.
    pub interior: usize,
    /// Trials whose best ray point is on the sphere within tolerance.
    pub boundary: usize,
}

/// Runs [`h1_check`] on `trials` random simplices in the unit ball.
/// Trial `i` draws from the stream `split_seed(seed, i)`, so the report
/// does not depend on scheduling.
pub fn h1_stress(
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
    sampler: VertexSampler,
) -> Result<H1Report> {
    h1_stress_with(n, m, trials, seed, sampler, Tolerances::default())
}

/// [`h1_stress`] with explicit tolerances for drawing and checking simplices.
pub fn h1_stress_with(
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
    sampler: VertexSampler,
    tol: Tolerances,
) -> Result<H1Report> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let ball = Ball::unit(n);
    let outcomes: Vec<(Simplex, usize, H1Check)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            let (simplex, rejected) = random_simplex(n, sampler, &mut rng, tol);
            let check = h1_check(&simplex, m, &ball)?;
            Ok((simplex, rejected, check))
        })
        .collect::<Result<_>>()?;

    let mut report = H1Report {
        n,
        m,
        trials,
        seed,
        sampler,
        failures: Vec::new(),
        min_slack: f64::INFINITY,
        satisfied_all: true,
        rejections: 0,
        interior: 0,
        boundary: 0,
    };
    for (trial, (simplex, rejected, check)) in outcomes.into_iter().enumerate() {
        report.rejections += rejected;
        report.min_slack = report.min_slack.min(check.slack);
        if !check.satisfied {
            report.failures.push(H1Failure {
                trial,
                slack: check.slack,
                simplex,
            });
        } else if check.slack > tol.slack {
            report.interior += 1;
        } else {
            report.boundary += 1;
        }
    }
    report.satisfied_all = report.failures.is_empty();
    Ok(report)
}

/// Largest dimension accepted by [`theta_search`].
pub const MAX_THETA_DIM: usize = 10;

/// Step schedule of the local search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepSchedule {
    pub initial: f64,
    pub shrink: f64,
    /// Consecutive rejected moves before the step shrinks.
    pub patience: usize,
    pub min_step: f64,
}

impl Default for StepSchedule {
    fn default() -> Self {
        Self {
            initial: 0.2,
            shrink: 0.7,
            patience: 20,
            min_step: 1e-7,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaEstimate {
    pub n: usize,
    pub best_norm: f64,
    pub best_simplex: Simplex,
    /// Index of the restart that produced the best value; restart 0 starts
    /// from the regular inscribed simplex.
    pub best_restart: usize,
    pub restart_norms: Vec<f64>,
    pub restarts: usize,
    pub seed: u64,
}

fn unit_ball_norm(vertices: &[Vector]) -> Option<f64> {
    let simplex = Simplex::new(vertices.to_vec()).ok()?;
    norm_on_ball(&simplex, &Ball::unit(vertices[0].len()))
        .ok()
        .map(|r| r.norm)
}

fn local_search<R: Rng>(
    mut vertices: Vec<Vector>,
    iterations: usize,
    schedule: &StepSchedule,
    rng: &mut R,
) -> (Vec<Vector>, f64) {
    let n = vertices[0].len();
    let mut best = unit_ball_norm(&vertices).unwrap_or(f64::INFINITY);
    let mut step = schedule.initial;
    let mut failures = 0;
    for _ in 0..iterations {
        if step < schedule.min_step {
            break;
        }
        let j = rng.random_range(0..=n);
        let old = vertices[j].clone();
        let mut moved = &old + uniform_in_ball(n, rng) * step;
        let len = moved.norm();
        if len > 1.0 {
            moved /= len;
        }
        vertices[j] = moved;
        match unit_ball_norm(&vertices) {
            Some(v) if v < best => {
                best = v;
                failures = 0;
            }
            _ => {
                vertices[j] = old;
                failures += 1;
                if failures >= schedule.patience {
                    step *= schedule.shrink;
                    failures = 0;
                }
            }
        }
    }
    (vertices, best)
}

/// Multi-restart local search minimizing the projector norm over simplices
/// with vertices in `B_n`. Restart 0 starts at the regular inscribed
/// simplex; the others at random simplices.
pub fn theta_search(
    n: usize,
    restarts: usize,
    iterations: usize,
    seed: u64,
) -> Result<ThetaEstimate> {
    theta_search_with(n, restarts, iterations, seed, &StepSchedule::default())
}

pub fn theta_search_with(
    n: usize,
    restarts: usize,
    iterations: usize,
    seed: u64,
    schedule: &StepSchedule,
) -> Result<ThetaEstimate> {
    if n == 0 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    if n > MAX_THETA_DIM {
        return Err(Error::DimensionTooLarge {
            n,
            max: MAX_THETA_DIM,
        });
    }
    if restarts == 0 {
        return Err(Error::InvalidInput("restarts must be at least 1".into()));
    }
    let results: Vec<(Vec<Vector>, f64)> = (0..restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_for(seed, r as u64);
            let start = if r == 0 {
                regular_in_unit_ball(n).vertices().to_vec()
            } else {
                random_simplex(
                    n,
                    VertexSampler::UniformBall,
                    &mut rng,
                    Tolerances::default(),
                )
                .0
                .vertices()
                .to_vec()
            };
            local_search(start, iterations, schedule, &mut rng)
        })
        .collect();

    let restart_norms: Vec<f64> = results.iter().map(|r| r.1).collect();
    let (best_restart, _) = restart_norms
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .expect("at least one restart");
    let (vertices, best_norm) = results.into_iter().nth(best_restart).unwrap();
    Ok(ThetaEstimate {
        n,
        best_norm,
        best_simplex: Simplex::new(vertices)?,
        best_restart,
        restart_norms,
        restarts,
        seed,
    })
}
