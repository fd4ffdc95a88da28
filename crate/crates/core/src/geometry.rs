//! Simplices, balls, ellipsoids and affine maps in `R^n`.
//!
//! A [`Simplex`] keeps its vertex matrix `S` (rows are the vertex
//! coordinates augmented with a trailing 1) together with `L = S^{-1}`.
//! Column `j` of `L` holds the coefficients of the basic Lagrange
//! polynomial `λ_j`, so `λ_j(x) = Σ_i l_ij x_i + l_{n+1,j}`.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// A point of `R^n`.
pub type Vector = DVector<f64>;

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// A nondegenerate simplex with `n + 1` ordered vertices.
#[derive(Debug, Clone)]
pub struct Simplex {
    vertices: Vec<Vector>,
    vertex_matrix: DMatrix<f64>,
    inverse: DMatrix<f64>,
    det: f64,
    tol: Tolerances,
}

impl Simplex {
    /// Builds a simplex with the default tolerances.
    pub fn new(vertices: Vec<Vector>) -> Result<Self> {
        Self::with_tolerances(vertices, Tolerances::default())
    }

    pub fn with_tolerances(vertices: Vec<Vector>, tol: Tolerances) -> Result<Self> {
        let count = vertices.len();
        if count < 2 {
            return Err(Error::InvalidInput(format!(
                "a simplex needs at least 2 vertices, got {count}"
            )));
        }
        let n = count - 1;
        for v in &vertices {
            check_dim(n, v.len())?;
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidInput("non-finite vertex coordinate".into()));
            }
        }

        let vertex_matrix =
            DMatrix::from_fn(
                n + 1,
                n + 1,
                |r, c| {
                    if c < n {
                        vertices[r][c]
                    } else {
                        1.0
                    }
                },
            );
        let max_row_norm = vertex_matrix
            .row_iter()
            .map(|r| r.norm())
            .fold(0.0_f64, f64::max);
        let threshold = tol.degenerate * max_row_norm.powi(n as i32);

        let lu = vertex_matrix.clone().lu();
        let det = lu.determinant();
        if !(det.abs() >= threshold) {
            return Err(Error::DegenerateSimplex { det, threshold });
        }
        let inverse = lu
            .try_inverse()
            .ok_or(Error::DegenerateSimplex { det, threshold })?;

        let residual = (&vertex_matrix * &inverse - DMatrix::identity(n + 1, n + 1)).amax();
        if residual > tol.identity {
            return Err(Error::DegenerateSimplex { det, threshold });
        }

        Ok(Self {
            vertices,
            vertex_matrix,
            inverse,
            det,
            tol,
        })
    }

    /// Convenience constructor from plain coordinate rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| Vector::from_row_slice(r)).collect())
    }

    /// Dimension `n` of the ambient space.
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Vector] {
        &self.vertices
    }

    pub fn vertex(&self, j: usize) -> &Vector {
        &self.vertices[j]
    }

    pub fn vertex_matrix(&self) -> &DMatrix<f64> {
        &self.vertex_matrix
    }

    /// `L = S^{-1}`; entry `(i, j)` is `l_ij`.
    pub fn inverse(&self) -> &DMatrix<f64> {
        &self.inverse
    }

    pub fn determinant(&self) -> f64 {
        self.det
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    /// Value of the basic Lagrange polynomial `λ_j` at `x`.
    pub fn lagrange(&self, j: usize, x: &Vector) -> f64 {
        let n = self.dim();
        let col = self.inverse.column(j);
        col.rows(0, n).dot(x) + col[n]
    }

    /// All `λ_j(x)` at once, i.e. `L^T (x, 1)`.
    pub fn lagrange_all(&self, x: &Vector) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        Ok((0..=self.dim()).map(|j| self.lagrange(j, x)).collect())
    }

    pub fn barycentric_of(&self, x: &Vector) -> Result<Barycentric> {
        Ok(Barycentric(self.lagrange_all(x)?))
    }

    pub fn point_of(&self, beta: &Barycentric) -> Result<Vector> {
        check_dim(self.vertices.len(), beta.0.len())?;
        beta.check_sum(self.tol.weight_sum)?;
        let mut x = Vector::zeros(self.dim());
        for (b, v) in beta.0.iter().zip(&self.vertices) {
            x.axpy(*b, v, 1.0);
        }
        Ok(x)
    }

    /// `|det S| / n!`
    pub fn volume(&self) -> f64 {
        let factorial: f64 = (1..=self.dim()).map(|k| k as f64).product();
        self.det.abs() / factorial
    }

    pub fn centroid(&self) -> Vector {
        let mut c = Vector::zeros(self.dim());
        for v in &self.vertices {
            c += v;
        }
        c / self.vertices.len() as f64
    }
}

/// Barycentric weights `β_1, ..., β_{n+1}` with `Σ β_j = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Barycentric(Vec<f64>);

impl Barycentric {
    /// Validates the weight sum against the default tolerance.
    pub fn new(betas: Vec<f64>) -> Result<Self> {
        let b = Self(betas);
        b.check_sum(Tolerances::default().weight_sum)?;
        Ok(b)
    }

    fn check_sum(&self, tol: f64) -> Result<()> {
        let sum = self.sum();
        if (sum - 1.0).abs() > tol || !sum.is_finite() {
            return Err(Error::WeightSumViolation { sum });
        }
        Ok(())
    }

    /// Unit weight on vertex `k` of an `(n+1)`-vertex simplex.
    pub fn vertex(k: usize, count: usize) -> Self {
        let mut b = vec![0.0; count];
        b[k] = 1.0;
        Self(b)
    }

    pub fn uniform(count: usize) -> Self {
        Self(vec![1.0 / count as f64; count])
    }

    pub fn betas(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// `Σ |β_j|`
    pub fn abs_sum(&self) -> f64 {
        self.0.iter().map(|b| b.abs()).sum()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

/// The closed Euclidean ball `‖x - center‖ ≤ radius`.
#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    center: Vector,
    radius: f64,
}

impl Ball {
    pub fn new(center: Vector, radius: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!(
                "ball radius must be positive and finite, got {radius}"
            )));
        }
        if center.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidInput("non-finite ball center".into()));
        }
        Ok(Self { center, radius })
    }

    /// The unit ball `B_n` centered at the origin.
    pub fn unit(n: usize) -> Self {
        Self {
            center: Vector::zeros(n),
            radius: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        (x - &self.center).norm() <= self.radius + tol
    }

    /// The same ball viewed as an ellipsoid with shape `R^2 I`.
    pub fn to_ellipsoid(&self) -> Ellipsoid {
        let n = self.dim();
        let shape = DMatrix::identity(n, n) * (self.radius * self.radius);
        Ellipsoid::new(self.center.clone(), shape).expect("a ball is a valid ellipsoid")
    }
}

/// The ellipsoid `(x - c)^T Q^{-1} (x - c) ≤ 1` with `Q` symmetric positive definite.
#[derive(Debug, Clone)]
pub struct Ellipsoid {
    center: Vector,
    shape: DMatrix<f64>,
    factor: DMatrix<f64>,
    shape_inv: DMatrix<f64>,
}

impl Ellipsoid {
    pub fn new(center: Vector, shape: DMatrix<f64>) -> Result<Self> {
        Self::with_symmetry_tol(center, shape, Tolerances::default().symmetry)
    }

    pub fn with_symmetry_tol(center: Vector, shape: DMatrix<f64>, symmetry: f64) -> Result<Self> {
        let n = center.len();
        if shape.nrows() != n || shape.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: shape.nrows(),
            });
        }
        if shape.iter().chain(center.iter()).any(|v| !v.is_finite()) {
            return Err(Error::DegenerateEllipsoid("non-finite entries".into()));
        }
        let asym = (&shape - shape.transpose()).amax();
        if asym > symmetry * shape.amax().max(1.0) {
            return Err(Error::DegenerateEllipsoid(format!(
                "shape matrix is not symmetric (asymmetry {asym:e})"
            )));
        }
        let sym = (&shape + shape.transpose()) * 0.5;
        let chol: Cholesky<f64, Dyn> = Cholesky::new(sym.clone()).ok_or_else(|| {
            Error::DegenerateEllipsoid("shape matrix is not positive definite".into())
        })?;
        let factor = chol.l();
        if factor.diagonal().iter().any(|d| !(*d > 0.0)) {
            return Err(Error::DegenerateEllipsoid(
                "shape matrix is not positive definite".into(),
            ));
        }
        let shape_inv = chol.inverse();
        Ok(Self {
            center,
            shape: sym,
            factor,
            shape_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn center(&self) -> &Vector {
        &self.center
    }

    pub fn shape(&self) -> &DMatrix<f64> {
        &self.shape
    }

    /// Lower-triangular `F` with `Q = F F^T`; `x = c + F u` maps `B_n` onto the ellipsoid.
    pub fn factor(&self) -> &DMatrix<f64> {
        &self.factor
    }

    pub fn shape_inverse(&self) -> &DMatrix<f64> {
        &self.shape_inv
    }

    /// `(x - c)^T Q^{-1} (x - c)`
    pub fn gauge_sq(&self, x: &Vector) -> f64 {
        let d = x - &self.center;
        d.dot(&(&self.shape_inv * &d))
    }

    pub fn contains(&self, x: &Vector, tol: f64) -> bool {
        self.gauge_sq(x).sqrt() <= 1.0 + tol
    }

    /// `κ_n sqrt(det Q)`
    pub fn volume(&self) -> f64 {
        let det_factor: f64 = self.factor.diagonal().iter().product();
        crate::extremal::unit_ball_volume(self.dim()) * det_factor
    }

    /// Returns the equivalent ball when `Q` is a scalar matrix within `tol`.
    pub fn as_ball(&self, tol: f64) -> Option<Ball> {
        let n = self.dim();
        let r2 = self.shape.trace() / n as f64;
        let off = (&self.shape - DMatrix::identity(n, n) * r2).amax();
        if off <= tol && r2 > 0.0 {
            Ball::new(self.center.clone(), r2.sqrt()).ok()
        } else {
            None
        }
    }
}

/// The affine map `F(x) = A x + b`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap {
    linear: DMatrix<f64>,
    translation: Vector,
}

impl AffineMap {
    pub fn new(linear: DMatrix<f64>, translation: Vector) -> Result<Self> {
        let n = translation.len();
        if linear.nrows() != n || linear.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: linear.nrows(),
            });
        }
        Ok(Self {
            linear,
            translation,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            linear: DMatrix::identity(n, n),
            translation: Vector::zeros(n),
        }
    }

    /// Splits an `n × (n+1)` matrix `M = [A | b]`.
    pub fn from_extended(m: &DMatrix<f64>) -> Result<Self> {
        let n = m.nrows();
        if m.ncols() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: m.ncols(),
            });
        }
        Ok(Self {
            linear: m.columns(0, n).into_owned(),
            translation: m.column(n).into_owned(),
        })
    }

    /// The unique map sending `source.vertex(j)` to `target[j]`: `M = Y (S^{-1})^T`.
    pub fn from_vertices(source: &Simplex, target: &[Vector]) -> Result<Self> {
        let n = source.dim();
        check_dim(n + 1, target.len())?;
        for y in target {
            check_dim(n, y.len())?;
        }
        let y = DMatrix::from_fn(n, n + 1, |i, j| target[j][i]);
        Self::from_extended(&(y * source.inverse().transpose()))
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn linear(&self) -> &DMatrix<f64> {
        &self.linear
    }

    pub fn translation(&self) -> &Vector {
        &self.translation
    }

    /// `M = [A | b]`, an `n × (n+1)` matrix.
    pub fn extended_matrix(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n + 1);
        m.columns_mut(0, n).copy_from(&self.linear);
        m.column_mut(n).copy_from(&self.translation);
        m
    }

    pub fn determinant(&self) -> f64 {
        self.linear.determinant()
    }

    fn ensure_nondegenerate(&self) -> Result<()> {
        let det = self.determinant();
        let sv = self.linear.clone().svd(false, false).singular_values;
        let (lo, hi) = (sv.min(), sv.max());
        if !(det != 0.0 && lo > Tolerances::default().degenerate * hi) {
            return Err(Error::SingularMap { det });
        }
        Ok(())
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.ensure_nondegenerate().is_ok()
    }

    pub fn inverse(&self) -> Result<Self> {
        self.ensure_nondegenerate()?;
        let inv = self
            .linear
            .clone()
            .try_inverse()
            .ok_or(Error::SingularMap {
                det: self.determinant(),
            })?;
        let translation = -(&inv * &self.translation);
        Ok(Self {
            linear: inv,
            translation,
        })
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            linear: &self.linear * &other.linear,
            translation: &self.linear * &other.translation + &self.translation,
        }
    }

    pub fn apply_point(&self, x: &Vector) -> Vector {
        &self.linear * x + &self.translation
    }

    /// Applies the map to any supported geometric object.
    pub fn apply<T: AffineImage + ?Sized>(&self, target: &T) -> Result<T::Output> {
        target.affine_image(self)
    }
}

/// Objects with a well-defined image under a nondegenerate affine map.
pub trait AffineImage {
    type Output;
    fn affine_image(&self, map: &AffineMap) -> Result<Self::Output>;
}

impl AffineImage for Vector {
    type Output = Vector;
    fn affine_image(&self, map: &AffineMap) -> Result<Vector> {
        check_dim(map.dim(), self.len())?;
        map.ensure_nondegenerate()?;
        Ok(map.apply_point(self))
    }
}

impl AffineImage for Simplex {
    type Output = Simplex;
    fn affine_image(&self, map: &AffineMap) -> Result<Simplex> {
        check_dim(map.dim(), self.dim())?;
        map.ensure_nondegenerate()?;
        let vertices = self.vertices.iter().map(|v| map.apply_point(v)).collect();
        Simplex::with_tolerances(vertices, self.tol)
    }
}

impl AffineImage for Ellipsoid {
    type Output = Ellipsoid;
    fn affine_image(&self, map: &AffineMap) -> Result<Ellipsoid> {
        check_dim(map.dim(), self.dim())?;
        map.ensure_nondegenerate()?;
        let a = map.linear();
        let shape = a * &self.shape * a.transpose();
        let shape = (&shape + shape.transpose()) * 0.5;
        Ellipsoid::new(map.apply_point(&self.center), shape)
    }
}

impl AffineImage for Ball {
    type Output = Ellipsoid;
    fn affine_image(&self, map: &AffineMap) -> Result<Ellipsoid> {
        self.to_ellipsoid().affine_image(map)
    }
}
