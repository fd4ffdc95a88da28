//! Linear interpolation projectors with nodes in a Euclidean ball.
//!
//! Given a nondegenerate simplex `S ⊂ R^n` with basic Lagrange polynomials
//! `λ_1, ..., λ_{n+1}`, the interpolation projector `P` onto linear
//! functions has norm `‖P‖_Ω = max_{x ∈ Ω} Σ |λ_j(x)|` as an operator on
//! `C(Ω)`. This crate computes that norm exactly over balls and
//! ellipsoids and checks the structure of the extremal configurations:
//!
//! - [`geometry`]: simplices, barycentric coordinates, balls, ellipsoids, affine maps.
//! - [`regular`]: the regular inscribed simplex, `ψ`, `k(n)` and the `(n, k, N)` table.
//! - [`norm`]: exact norm by sign-class enumeration, sampled lower estimates.
//! - [`extremal`]: maximum points, maximal segments, minimal ellipsoids, volume constants.
//! - [`bounds`]: the Legendre-polynomial lower bound.
//! - [`conjecture`]: ray-point stress tests and a local search for the minimal norm.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod conjecture;
pub mod error;
pub mod extremal;
pub mod format;
pub mod geometry;
pub mod norm;
pub mod regular;
pub mod sampling;
pub mod tolerance;

pub use bounds::{
    chi_inverse, chi_inverse_ln, legendre_chi, ln_legendre_chi, lower_bound, lower_bound_constant,
};
pub use conjecture::{
    h1_check, h1_point, h1_stress, h1_stress_with, min_reflected_norm, theta_search, H1Check,
    H1Failure, H1Report, ThetaEstimate,
};
pub use error::{Error, Result};
pub use extremal::{
    all_max_points, face_centroid, is_maximal_segment, max_point, minimal_ellipsoid,
    minimal_ellipsoid_exit, minimal_ellipsoid_point, volume_constants, Body, FaceSubset,
    MaxPointResult, VolumeConstants,
};
pub use format::{BallRecord, EllipsoidRecord, SimplexRecord};
pub use geometry::{AffineImage, AffineMap, Ball, Barycentric, Ellipsoid, Simplex, Vector};
pub use norm::{lambda_sum, norm_on_ball, norm_on_ellipsoid, norm_sampled, NormReport, SignVector};
pub use regular::{
    a_of, binomial_exact, k_of, psi, regular_in_ball, regular_inscribed, regular_norm, table1,
    RegularConfig, TableRow,
};
pub use sampling::VertexSampler;
pub use tolerance::Tolerances;
