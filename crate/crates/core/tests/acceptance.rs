//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails at
//! the end if any criterion failed.

mod common;

use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_bigint::BigUint;
use simplex_ball::{
    a_of, all_max_points, binomial_exact, face_centroid, h1_stress, is_maximal_segment, k_of,
    lower_bound, min_reflected_norm, minimal_ellipsoid, norm_on_ball, norm_on_ellipsoid,
    norm_sampled, psi, regular_inscribed, regular_norm, table1, theta_search, volume_constants,
    AffineMap, FaceSubset, Vector, VertexSampler,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

const SEED: u64 = 0xC0FFEE;

/// Reference table of `(n, k, N)`.
const TABLE1: &[(usize, usize, &str)] = &[
    (1, 1, "2"),
    (2, 1, "3"),
    (3, 1, "4"),
    (4, 1, "5"),
    (5, 2, "15"),
    (6, 2, "21"),
    (7, 3, "56"),
    (8, 3, "84"),
    (9, 3, "120"),
    (10, 4, "330"),
    (11, 4, "495"),
    (12, 5, "1287"),
    (13, 5, "2002"),
    (14, 6, "5005"),
    (15, 6, "8008"),
    (50, 22, "196793068630200"),
    (100, 45, "110826707011209895344085355160"),
];

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn table_reproduction() -> Outcome {
    let rows = table1(100);
    let mut mismatches = Vec::new();
    for &(n, k, count) in TABLE1 {
        let row = &rows[n - 1];
        let expected: BigUint = count.parse().unwrap();
        if row.k != k || row.count != expected {
            mismatches.push(format!(
                "n={n}: computed (k={}, N={}) vs table (k={k}, N={count})",
                row.k, row.count
            ));
        }
    }
    if mismatches.is_empty() {
        Ok(format!("{} rows match", TABLE1.len()))
    } else {
        Err(mismatches.join("; "))
    }
}

fn closed_form_vs_enumeration() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=12 {
        let cfg = regular_inscribed(n);
        let a = a_of(n);
        let closed = psi(n, a as f64)
            .unwrap()
            .max(psi(n, (a + 1) as f64).unwrap());
        let err = (norm_on_ball(&cfg.simplex, &cfg.ball).unwrap().norm - closed).abs();
        worst = worst.max(err);
        check(err <= 1e-10, || format!("n={n}: error {err:e}"))?;
    }
    Ok(format!("max error {worst:.1e}"))
}

fn max_points_on_sphere() -> Outcome {
    let mut total = 0;
    for n in 2..=10 {
        let cfg = regular_inscribed(n);
        let norm = norm_on_ball(&cfg.simplex, &cfg.ball).unwrap().norm;
        let points = all_max_points(n).unwrap();
        let expected = binomial_exact(n as u64 + 1, k_of(n) as u64);
        check(BigUint::from(points.len()) == expected, || {
            format!("n={n}: {} points, expected {expected}", points.len())
        })?;
        for p in &points {
            let dl = (p.lambda_sum_at_y - norm).abs();
            check(dl <= 1e-9, || format!("n={n}: |λ(y) - norm| = {dl:e}"))?;
            let dr = ((&p.y - cfg.ball.center()).norm() - cfg.ball.radius()).abs();
            check(dr <= 1e-9, || format!("n={n}: off sphere by {dr:e}"))?;
        }
        for (i, p) in points.iter().enumerate() {
            for q in &points[i + 1..] {
                let d = (&p.y - &q.y).norm();
                check(d > 1e-6, || format!("n={n}: coincident max points ({d:e})"))?;
            }
        }
        total += points.len();
    }
    Ok(format!("{total} max points checked"))
}

fn all_segments_maximal(simplex: &simplex_ball::Simplex) -> Result<(), String> {
    let n = simplex.dim();
    for m in 1..=n {
        for subset in FaceSubset::all(n + 1, m) {
            let g = face_centroid(simplex, subset.indices()).unwrap();
            let h = face_centroid(simplex, &subset.complement()).unwrap();
            check(is_maximal_segment(simplex, &g, &h).unwrap(), || {
                format!("n={n}, subset {:?} not maximal", subset.indices())
            })?;
        }
    }
    Ok(())
}

fn maximal_segments() -> Outcome {
    for n in 1..=8 {
        all_segments_maximal(&regular_inscribed(n).simplex)?;
    }
    for n in 2..=5 {
        for trial in 0..100 {
            let mut rng = common::rng(SEED + 4, (n * 1000 + trial) as u64);
            all_segments_maximal(&common::random_simplex_in_unit_ball(n, &mut rng))?;
        }
    }
    Ok("regular n=1..8 and 400 random simplices".into())
}

fn affine_invariance() -> Outcome {
    let (mut worst_norm, mut worst_form): (f64, f64) = (0.0, 0.0);
    for n in 2..=5 {
        for trial in 0..100 {
            let mut rng = common::rng(SEED + 5, (n * 1000 + trial) as u64);
            let (s, ball) = common::random_simplex_in_random_ball(n, &mut rng);
            let f = common::random_affine(n, &mut rng);
            let before = norm_on_ball(&s, &ball).unwrap().norm;
            let after = norm_on_ellipsoid(&f.apply(&s).unwrap(), &f.apply(&ball).unwrap())
                .unwrap()
                .norm;
            // Relative to the norm: near-flat draws have norms in the thousands.
            let err = (before - after).abs() / before.max(1.0);
            worst_norm = worst_norm.max(err);
            check(err <= 1e-9, || {
                format!("n={n} trial {trial}: norm moved by {err:e}")
            })?;

            let t = common::random_simplex_in_unit_ball(n, &mut rng);
            let map = AffineMap::from_vertices(&s, t.vertices()).unwrap();
            let y = DMatrix::from_fn(n, n + 1, |i, j| t.vertex(j)[i]);
            let matrix_form = y * s.inverse().transpose();
            for _ in 0..100 {
                let x = common::random_point_in_ball(&ball, &mut rng);
                let mut ext = x.clone().insert_row(n, 1.0);
                ext = &matrix_form * ext;
                let lagrange_form = s
                    .lagrange_all(&x)
                    .unwrap()
                    .iter()
                    .zip(t.vertices())
                    .fold(Vector::zeros(n), |acc, (l, v)| acc + v * *l);
                let err = (&ext - &lagrange_form)
                    .amax()
                    .max((map.apply_point(&x) - &lagrange_form).amax());
                worst_form = worst_form.max(err);
                check(err <= 1e-9, || {
                    format!("n={n} trial {trial}: forms differ by {err:e}")
                })?;
            }
        }
    }
    Ok(format!(
        "relative norm drift {worst_norm:.1e}, form disagreement {worst_form:.1e}"
    ))
}

fn minimal_ellipsoid_norm() -> Outcome {
    let (mut worst_norm, mut worst_vol, mut worst_mvee): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for n in 2..=5 {
        let k = volume_constants(n).k;
        for trial in 0..100 {
            let mut rng = common::rng(SEED + 6, (n * 1000 + trial) as u64);
            let s = common::random_simplex_in_unit_ball(n, &mut rng);
            let e = minimal_ellipsoid(&s).unwrap();
            let err = (norm_on_ellipsoid(&s, &e).unwrap().norm - regular_norm(n)).abs();
            worst_norm = worst_norm.max(err);
            check(err <= 1e-8, || {
                format!("n={n} trial {trial}: norm error {err:e}")
            })?;
            let rel = (e.volume() / s.volume() - k).abs() / k;
            worst_vol = worst_vol.max(rel);
            check(rel <= 1e-8, || {
                format!("n={n} trial {trial}: volume ratio error {rel:e}")
            })?;
            let (c, q) = common::khachiyan_mvee(s.vertices(), 1e-12);
            let err = (e.center() - c).amax().max((e.shape() - q).amax());
            worst_mvee = worst_mvee.max(err);
            check(err <= 1e-6, || {
                format!("n={n} trial {trial}: MVEE disagreement {err:e}")
            })?;
        }
    }
    Ok(format!(
        "norm {worst_norm:.1e}, volume {worst_vol:.1e}, MVEE {worst_mvee:.1e}"
    ))
}

fn lower_bound_growth() -> Outcome {
    let mut min_ratio = f64::INFINITY;
    for n in 1..=50 {
        let lb = lower_bound(n);
        let floor = 0.2135 * (n as f64).sqrt();
        check(lb > floor, || format!("n={n}: lower bound {lb} <= {floor}"))?;
        check(regular_norm(n) >= lb, || {
            format!("n={n}: regular norm {} < lower bound {lb}", regular_norm(n))
        })?;
        min_ratio = min_ratio.min(lb / (n as f64).sqrt());
    }
    Ok(format!("min lower_bound/sqrt(n) = {min_ratio:.4}"))
}

fn reflected_vertices() -> Outcome {
    let mut worst = f64::NEG_INFINITY;
    for n in 2..=8 {
        for trial in 0..10_000 {
            let mut rng = common::rng(SEED + 8, (n * 100_000 + trial) as u64);
            let s = common::random_simplex_in_unit_ball(n, &mut rng);
            let d = min_reflected_norm(&s);
            worst = worst.max(d);
            check(d <= 1.0 + 1e-9, || format!("n={n} trial {trial}: {d}"))?;
        }
    }
    Ok(format!("max of min_j |2c - x_j| = {worst:.6}"))
}

fn conjecture_support() -> Outcome {
    let mut summary = Vec::new();
    for sampler in [VertexSampler::UniformBall, VertexSampler::BoundaryBiased] {
        for n in 5..=8 {
            let report = h1_stress(n, k_of(n), 1000, SEED, sampler).unwrap();
            if !report.failures.is_empty() {
                let dir = std::path::Path::new(env!("CARGO_TARGET_TMPDIR"));
                let path = dir.join(format!("h1-counterexample-n{n}-{sampler}.json"));
                std::fs::write(&path, serde_json::to_string_pretty(&report).unwrap()).unwrap();
                return Err(format!(
                    "n={n} ({sampler}): {} counterexamples, replay artifact {}",
                    report.failures.len(),
                    path.display()
                ));
            }
            summary.push(format!("n={n}/{sampler} slack {:.3}", report.min_slack));
        }
    }
    Ok(summary.join(", "))
}

fn theta_estimates() -> Outcome {
    let targets = [(2, 5.0 / 3.0), (3, 2.0), (4, regular_norm(4))];
    let mut found = Vec::new();
    for (n, target) in targets {
        let est = theta_search(n, 20, 2000, SEED).unwrap();
        let err = (est.best_norm - target).abs();
        check(err <= 1e-6, || {
            format!("n={n}: best {} vs {target}", est.best_norm)
        })?;
        let lb = lower_bound(n);
        let low = est
            .restart_norms
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        check(low >= lb, || {
            format!("n={n}: restart norm {low} below lower bound {lb}")
        })?;
        found.push(format!("θ_{n} ≈ {:.9}", est.best_norm));
    }
    Ok(found.join(", "))
}

fn sampling_sandwich() -> Outcome {
    let mut gaps = Vec::new();
    for n in 2..=4 {
        let cfg = regular_inscribed(n);
        let exact = norm_on_ball(&cfg.simplex, &cfg.ball).unwrap().norm;
        let sampled = norm_sampled(&cfg.simplex, &cfg.ball, 100_000, SEED).unwrap();
        check(sampled <= exact + 1e-12, || {
            format!("n={n}: sampled {sampled} > exact {exact}")
        })?;
        check(exact - sampled <= 1e-3, || {
            format!("n={n}: gap {}", exact - sampled)
        })?;
        gaps.push(format!("n={n} gap {:.1e}", exact - sampled));
    }
    Ok(gaps.join(", "))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        (
            "1 table reproduction",
            table_reproduction,
            Some(Duration::from_secs(1)),
        ),
        (
            "2 closed form vs enumeration",
            closed_form_vs_enumeration,
            Some(Duration::from_secs(10)),
        ),
        (
            "3 max points on the ball",
            max_points_on_sphere,
            Some(Duration::from_secs(30)),
        ),
        ("4 maximal segments", maximal_segments, None),
        ("5 affine invariance", affine_invariance, None),
        ("6 minimal ellipsoid", minimal_ellipsoid_norm, None),
        (
            "7 lower bound growth",
            lower_bound_growth,
            Some(Duration::from_secs(5)),
        ),
        (
            "8 reflected vertices",
            reflected_vertices,
            Some(Duration::from_secs(60)),
        ),
        (
            "9 conjecture support",
            conjecture_support,
            Some(Duration::from_secs(600)),
        ),
        (
            "10 theta search",
            theta_estimates,
            Some(Duration::from_secs(300)),
        ),
        ("11 sampling sandwich", sampling_sandwich, None),
    ];
    let mut failed = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("runtime {elapsed:.2?} exceeds {limit:.0?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("[PASS] {name} ({elapsed:.2?}): {detail}"),
            Err(detail) => {
                println!("[FAIL] {name} ({elapsed:.2?}): {detail}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
