use thiserror::Error;

/// Errors produced by the geometric and numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(
        "DegenerateSimplex: vertex matrix is singular (|det S| = {det:e}, threshold {threshold:e})"
    )]
    DegenerateSimplex { det: f64, threshold: f64 },

    #[error("DimensionMismatch: expected dimension {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("WeightSumViolation: barycentric weights sum to {sum}, expected 1")]
    WeightSumViolation { sum: f64 },

    #[error("SingularMap: linear part of the affine map is singular (det = {det:e})")]
    SingularMap { det: f64 },

    #[error("DomainError: {0}")]
    Domain(String),

    #[error("DimensionTooLarge: n = {n} exceeds the supported maximum {max}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("SimplexNotContained: vertex {vertex} lies outside the body (excess {excess:e})")]
    SimplexNotContained { vertex: usize, excess: f64 },

    #[error("DegenerateEllipsoid: {0}")]
    DegenerateEllipsoid(String),

    #[error("EmptySubset: a face subset needs at least one vertex")]
    EmptySubset,

    #[error("InvalidSubset: {0}")]
    InvalidSubset(String),

    #[error("CoincidentCentroids: face centroids g and h coincide")]
    CoincidentCentroids,

    #[error("NoIntersection: ray does not meet the boundary (discriminant {discriminant:e})")]
    NoIntersection { discriminant: f64 },

    #[error("DegeneratePoints: segment endpoints coincide")]
    DegeneratePoints,

    #[error("SubsetCountTooLarge: {count} subsets exceed the limit {limit}")]
    SubsetCountTooLarge { count: String, limit: u64 },

    #[error("InvalidInput: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
