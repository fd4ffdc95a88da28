use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use simplex_ball::{Tolerances, VertexSampler};

#[derive(Debug, Parser)]
#[command(
    name = "simplex-ball",
    version,
    about = "Projector norms of simplices in balls"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// RNG seed: decimal, 0x-prefixed hex, or `random`.
    #[arg(long, global = true, default_value = "0xC0FFEE", value_parser = parse_seed)]
    pub seed: Seed,
    /// Worker threads (default: available cores).
    #[arg(long, global = true, env = "SIMPLEX_BALL_JOBS", value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    /// Do not print the timestamp header on stderr.
    #[arg(long, global = true)]
    pub no_header: bool,
    /// Write results here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub tol: ToleranceOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seed {
    Fixed(u64),
    Random,
}

impl Seed {
    pub fn resolve(self) -> u64 {
        match self {
            Seed::Fixed(s) => s,
            Seed::Random => rand::random(),
        }
    }
}

fn parse_seed(s: &str) -> Result<Seed, String> {
    if s == "random" {
        return Ok(Seed::Random);
    }
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed
        .map(Seed::Fixed)
        .map_err(|e| format!("invalid seed '{s}': {e}"))
}

#[derive(Debug, Args)]
#[command(next_help_heading = "Tolerances")]
pub struct ToleranceOpts {
    #[arg(long, global = true)]
    pub tol_degenerate: Option<f64>,
    #[arg(long, global = true)]
    pub tol_identity: Option<f64>,
    #[arg(long, global = true)]
    pub tol_weight_sum: Option<f64>,
    #[arg(long, global = true)]
    pub tol_containment: Option<f64>,
    #[arg(long, global = true)]
    pub tol_zero: Option<f64>,
    #[arg(long, global = true)]
    pub tol_symmetry: Option<f64>,
    #[arg(long, global = true)]
    pub tol_slack: Option<f64>,
}

impl ToleranceOpts {
    pub fn resolve(&self) -> Tolerances {
        let d = Tolerances::default();
        Tolerances {
            degenerate: self.tol_degenerate.unwrap_or(d.degenerate),
            identity: self.tol_identity.unwrap_or(d.identity),
            weight_sum: self.tol_weight_sum.unwrap_or(d.weight_sum),
            containment: self.tol_containment.unwrap_or(d.containment),
            zero: self.tol_zero.unwrap_or(d.zero),
            symmetry: self.tol_symmetry.unwrap_or(d.symmetry),
            slack: self.tol_slack.unwrap_or(d.slack),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rows (n, a, k, N) of the regular-simplex table.
    Table1 {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=100_000))]
        n_max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Compare against the embedded reference rows; exit 1 on any mismatch.
        #[arg(long)]
        verify: bool,
    },
    /// Norm of the interpolation projector over a ball or ellipsoid.
    Norm {
        /// Simplex JSON file.
        #[arg(long, requires = "body", conflicts_with = "regular")]
        simplex: Option<PathBuf>,
        /// Ball JSON file.
        #[arg(long, group = "body")]
        ball: Option<PathBuf>,
        /// Ellipsoid JSON file.
        #[arg(long, group = "body")]
        ellipsoid: Option<PathBuf>,
        /// Use the regular simplex inscribed in the reference ball in dimension N.
        #[arg(long, value_name = "N", conflicts_with = "body", required_unless_present = "simplex",
              value_parser = clap::value_parser!(u64).range(1..=30))]
        regular: Option<u64>,
        /// Include the value of every sign class (n <= 12).
        #[arg(long)]
        per_sign: bool,
    },
    /// Maximum points of the regular simplex on its ball.
    Maxpoints {
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=30))]
        n: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Minimum-volume ellipsoid containing a simplex.
    MinimalEllipsoid {
        #[arg(long)]
        simplex: PathBuf,
    },
    /// Lower bound on the minimal projector norm for n = 1..=N.
    LowerBound {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=1000))]
        n_max: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Stress test of the ray-point hypothesis on random simplices.
    Conjecture(ConjectureArgs),
    /// Estimate of the minimal projector norm by multi-restart local search.
    Theta {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10))]
        n: u64,
        #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
        restarts: u64,
        #[arg(long, default_value_t = 2000)]
        iterations: u64,
    },
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    #[arg(long, required_unless_present = "replay", value_parser = clap::value_parser!(u64).range(1..=30))]
    pub n: Option<u64>,
    /// Subset size (default k(n)); values above n/2 are exploratory.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub m: Option<u64>,
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value = "uniform-ball", value_parser = parse_sampler)]
    pub sampler: VertexSampler,
    /// Re-check the simplices of a counterexample file (or a single simplex).
    #[arg(long, conflicts_with = "n")]
    pub replay: Option<PathBuf>,
    /// Where to write counterexamples (default: h1-counterexample-n<N>-m<M>-seed<S>.json).
    #[arg(long)]
    pub counterexample_out: Option<PathBuf>,
}

fn parse_sampler(s: &str) -> Result<VertexSampler, String> {
    s.parse().map_err(|e: simplex_ball::Error| e.to_string())
}
