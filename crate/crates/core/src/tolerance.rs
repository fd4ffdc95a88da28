//! Floating-point contracts shared across the crate.

use serde::{Deserialize, Serialize};

/// Absolute tolerances used by the numerical predicates.
///
/// Every geometric object that needs a tolerance carries a copy of this
/// struct, so a caller can override the defaults once at construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    /// Relative determinant threshold: a simplex is degenerate when
    /// `|det S| < degenerate * (max row norm)^n`.
    pub degenerate: f64,
    /// Allowed residual of `S * S^{-1} - I`.
    pub identity: f64,
    /// Allowed deviation of a barycentric weight sum from one.
    pub weight_sum: f64,
    /// Slack for membership tests of points in balls and ellipsoids.
    pub containment: f64,
    /// A barycentric coordinate with absolute value below this is zero.
    pub zero: f64,
    /// Allowed asymmetry of an ellipsoid shape matrix.
    pub symmetry: f64,
    /// Slack below which an H1 ray point is still counted as inside the ball.
    pub slack: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            degenerate: 1e-12,
            identity: 1e-10,
            weight_sum: 1e-9,
            containment: 1e-9,
            zero: 1e-9,
            symmetry: 1e-10,
            slack: 1e-9,
        }
    }
}
