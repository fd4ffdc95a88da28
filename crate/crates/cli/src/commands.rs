use std::path::{Path, PathBuf};

use serde::Serialize;
use simplex_ball::extremal::ln_volume_ratio;
use simplex_ball::norm::norm_on_ball_with_table;
use simplex_ball::{
    all_max_points, h1_check, h1_stress_with, k_of, lower_bound, lower_bound_constant,
    minimal_ellipsoid, norm_on_ball, norm_on_ellipsoid, regular_inscribed, regular_norm, table1,
    theta_search, volume_constants, Ball, H1Check, NormReport, SimplexRecord, Tolerances,
};

use crate::args::{Command, ConjectureArgs, Format};
use crate::error::{code, CliError, CliResult};
use crate::io::{
    emit, read_ball, read_ellipsoid, read_json, read_simplex, to_csv, to_json, write_file,
};
use crate::verify;

pub struct Context {
    pub seed: u64,
    pub tol: Tolerances,
    pub output: Option<PathBuf>,
}

impl Context {
    fn emit(&self, text: &str) -> CliResult<()> {
        emit(self.output.as_deref(), text)
    }
}

/// Runs one subcommand and returns its exit code.
pub fn run(command: Command, ctx: &Context) -> CliResult<u8> {
    match command {
        Command::Table1 {
            n_max,
            format,
            verify,
        } => cmd_table1(n_max as usize, format, verify, ctx),
        Command::Norm {
            simplex,
            ball,
            ellipsoid,
            regular,
            per_sign,
        } => cmd_norm(simplex, ball, ellipsoid, regular, per_sign, ctx),
        Command::Maxpoints { n, format } => cmd_maxpoints(n as usize, format, ctx),
        Command::MinimalEllipsoid { simplex } => {
            let s = read_simplex(&simplex, ctx.tol)?;
            ctx.emit(&to_json(&minimal_ellipsoid(&s)?)?)?;
            Ok(code::OK)
        }
        Command::LowerBound { n_max, format } => cmd_lower_bound(n_max, format, ctx),
        Command::Conjecture(args) => cmd_conjecture(args, ctx),
        Command::Theta {
            n,
            restarts,
            iterations,
        } => {
            let est = theta_search(n as usize, restarts as usize, iterations as usize, ctx.seed)?;
            ctx.emit(&to_json(&est)?)?;
            Ok(code::OK)
        }
    }
}

fn cmd_table1(n_max: usize, format: Format, verify: bool, ctx: &Context) -> CliResult<u8> {
    let rows = table1(n_max);
    let text = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let records: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.a.to_string(),
                        r.k.to_string(),
                        r.count.to_string(),
                    ]
                })
                .collect();
            to_csv(&["n", "a", "k", "N"], &records)?
        }
    };
    ctx.emit(&text)?;
    if verify {
        let found = verify::mismatches(&rows);
        if !found.is_empty() {
            return Err(CliError::Mismatch(format!(
                "table verification failed:\n  {}",
                found.join("\n  ")
            )));
        }
    }
    Ok(code::OK)
}

#[derive(Serialize)]
struct NormOutput {
    #[serde(flatten)]
    report: NormReport,
    #[serde(rename = "closedForm", skip_serializing_if = "Option::is_none")]
    closed_form: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    difference: Option<f64>,
}

fn cmd_norm(
    simplex: Option<PathBuf>,
    ball: Option<PathBuf>,
    ellipsoid: Option<PathBuf>,
    regular: Option<u64>,
    per_sign: bool,
    ctx: &Context,
) -> CliResult<u8> {
    let on_ball = |s, b| {
        if per_sign {
            norm_on_ball_with_table(s, b)
        } else {
            norm_on_ball(s, b)
        }
    };
    let out = if let Some(n) = regular {
        let cfg = regular_inscribed(n as usize);
        let report = on_ball(&cfg.simplex, &cfg.ball)?;
        let closed = regular_norm(n as usize);
        NormOutput {
            difference: Some((report.norm - closed).abs()),
            closed_form: Some(closed),
            report,
        }
    } else {
        let path = simplex.ok_or_else(|| CliError::Usage("--simplex is required".into()))?;
        let s = read_simplex(&path, ctx.tol)?;
        let report = match (ball, ellipsoid) {
            (Some(b), None) => on_ball(&s, &read_ball(&b)?)?,
            (None, Some(e)) => norm_on_ellipsoid(&s, &read_ellipsoid(&e, ctx.tol)?)?,
            _ => {
                return Err(CliError::Usage(
                    "exactly one of --ball or --ellipsoid is required".into(),
                ))
            }
        };
        NormOutput {
            report,
            closed_form: None,
            difference: None,
        }
    };
    ctx.emit(&to_json(&out)?)?;
    Ok(code::OK)
}

fn coordinate_header(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}_{i}"))
}

fn cmd_maxpoints(n: usize, format: Format, ctx: &Context) -> CliResult<u8> {
    let points = all_max_points(n)?;
    let text = match format {
        Format::Json => to_json(&points)?,
        Format::Csv => {
            let header: Vec<String> = std::iter::once("subset".to_string())
                .chain(coordinate_header("g", n))
                .chain(coordinate_header("h", n))
                .chain(coordinate_header("y", n))
                .chain(std::iter::once("lambdaSum".to_string()))
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let records: Vec<Vec<String>> = points
                .iter()
                .map(|p| {
                    let subset = p
                        .subset
                        .indices()
                        .iter()
                        .map(|i| (i + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    std::iter::once(subset)
                        .chain(p.g.iter().map(f64::to_string))
                        .chain(p.h.iter().map(f64::to_string))
                        .chain(p.y.iter().map(f64::to_string))
                        .chain(std::iter::once(p.lambda_sum_at_y.to_string()))
                        .collect()
                })
                .collect();
            to_csv(&header, &records)?
        }
    };
    ctx.emit(&text)?;
    Ok(code::OK)
}

#[derive(Serialize)]
struct LowerBoundRow {
    n: usize,
    /// `null` once `K_n` overflows (n > 227); `lnK` stays finite.
    #[serde(rename = "K")]
    k: f64,
    #[serde(rename = "lnK")]
    ln_k: f64,
    #[serde(rename = "lowerBound")]
    bound: f64,
    /// `0.2135 √n`, rounded down from the asymptotic constant.
    floor: f64,
    #[serde(rename = "regularNorm")]
    regular_norm: f64,
}

fn cmd_lower_bound(n_max: u64, format: Format, ctx: &Context) -> CliResult<u8> {
    let c = (lower_bound_constant() * 1e4).floor() / 1e4;
    let rows: Vec<LowerBoundRow> = (1..=n_max as usize)
        .map(|n| LowerBoundRow {
            n,
            k: volume_constants(n).k,
            ln_k: ln_volume_ratio(n),
            bound: lower_bound(n),
            floor: c * (n as f64).sqrt(),
            regular_norm: regular_norm(n),
        })
        .collect();
    let text = match format {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let records: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.k.to_string(),
                        r.ln_k.to_string(),
                        r.bound.to_string(),
                        r.floor.to_string(),
                        r.regular_norm.to_string(),
                    ]
                })
                .collect();
            to_csv(
                &["n", "K", "lnK", "lowerBound", "floor", "regularNorm"],
                &records,
            )?
        }
    };
    ctx.emit(&text)?;
    Ok(code::OK)
}

fn cmd_conjecture(args: ConjectureArgs, ctx: &Context) -> CliResult<u8> {
    if let Some(path) = &args.replay {
        return replay(path, args.m.map(|m| m as usize), ctx);
    }
    let n = args.n.expect("clap requires --n without --replay") as usize;
    let m = args.m.map_or_else(|| k_of(n), |m| m as usize);
    let report = h1_stress_with(n, m, args.trials as usize, ctx.seed, args.sampler, ctx.tol)?;
    let text = to_json(&report)?;
    ctx.emit(&text)?;
    if report.failures.is_empty() {
        return Ok(code::OK);
    }
    let path = args.counterexample_out.unwrap_or_else(|| {
        PathBuf::from(format!("h1-counterexample-n{n}-m{m}-seed{}.json", ctx.seed))
    });
    write_file(&path, &text)?;
    eprintln!(
        "{} counterexample(s); replay with: simplex-ball conjecture --replay {}",
        report.failures.len(),
        path.display()
    );
    Ok(code::COUNTEREXAMPLE)
}

#[derive(Serialize)]
struct ReplayEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    trial: Option<u64>,
    check: H1Check,
}

#[derive(Serialize)]
struct ReplayReport {
    m: usize,
    satisfied_all: bool,
    results: Vec<ReplayEntry>,
}

/// Accepts a stress report, a single failure, or a bare simplex.
fn replay(path: &Path, m: Option<usize>, ctx: &Context) -> CliResult<u8> {
    let value: serde_json::Value = read_json(path)?;
    let parse = |v: &serde_json::Value| {
        serde_json::from_value::<SimplexRecord>(v.clone()).map_err(|e| CliError::parse(path, e))
    };
    let failure = |v: &serde_json::Value| -> CliResult<(Option<u64>, SimplexRecord)> {
        let simplex = v
            .get("simplex")
            .ok_or_else(|| CliError::parse(path, "failure entry without a simplex"))?;
        Ok((v.get("trial").and_then(|t| t.as_u64()), parse(simplex)?))
    };
    let entries = if value.get("vertices").is_some() {
        vec![(None, parse(&value)?)]
    } else if let Some(list) = value.get("failures").and_then(|f| f.as_array()) {
        list.iter().map(failure).collect::<CliResult<_>>()?
    } else if value.get("simplex").is_some() {
        vec![failure(&value)?]
    } else {
        return Err(CliError::parse(
            path,
            "expected a simplex, a failure, or a stress report",
        ));
    };
    if entries.is_empty() {
        return Err(CliError::parse(path, "no simplices to replay"));
    }
    let file_m = value.get("m").and_then(|m| m.as_u64()).map(|m| m as usize);
    let mut results = Vec::with_capacity(entries.len());
    let mut used_m = 0;
    for (trial, record) in entries {
        let simplex = record.into_simplex(ctx.tol)?;
        let n = simplex.dim();
        used_m = m.or(file_m).unwrap_or_else(|| k_of(n));
        let check = h1_check(&simplex, used_m, &Ball::unit(n))?;
        results.push(ReplayEntry { trial, check });
    }
    let satisfied_all = results.iter().all(|r| r.check.satisfied);
    ctx.emit(&to_json(&ReplayReport {
        m: used_m,
        satisfied_all,
        results,
    })?)?;
    Ok(if satisfied_all {
        code::OK
    } else {
        code::COUNTEREXAMPLE
    })
}
