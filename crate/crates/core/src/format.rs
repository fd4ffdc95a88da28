//! Canonical JSON shapes for simplices, balls and ellipsoids.
//!
//! ```json
//! {"n": 2, "vertices": [[1, 0], [0, 1], [0, 0]]}
//! {"center": [0, 0], "radius": 1}
//! {"center": [0, 0], "shape": [[1, 0], [0, 1]]}
//! ```

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Ball, Ellipsoid, Simplex, Vector};
use crate::tolerance::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexRecord {
    pub n: usize,
    pub vertices: Vec<Vec<f64>>,
}

impl SimplexRecord {
    pub fn into_simplex(self, tol: Tolerances) -> Result<Simplex> {
        if self.vertices.len() != self.n + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} vertices for n = {}, found {}",
                self.n + 1,
                self.n,
                self.vertices.len()
            )));
        }
        if let Some(row) = self.vertices.iter().find(|r| r.len() != self.n) {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: row.len(),
            });
        }
        Simplex::with_tolerances(
            self.vertices
                .iter()
                .map(|r| Vector::from_row_slice(r))
                .collect(),
            tol,
        )
    }
}

impl From<&Simplex> for SimplexRecord {
    fn from(s: &Simplex) -> Self {
        Self {
            n: s.dim(),
            vertices: s
                .vertices()
                .iter()
                .map(|v| v.iter().copied().collect())
                .collect(),
        }
    }
}

impl Serialize for Simplex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        SimplexRecord::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Simplex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        SimplexRecord::deserialize(deserializer)?
            .into_simplex(Tolerances::default())
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BallRecord {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl TryFrom<BallRecord> for Ball {
    type Error = Error;
    fn try_from(r: BallRecord) -> Result<Ball> {
        Ball::new(Vector::from_vec(r.center), r.radius)
    }
}

impl From<&Ball> for BallRecord {
    fn from(b: &Ball) -> Self {
        Self {
            center: b.center().iter().copied().collect(),
            radius: b.radius(),
        }
    }
}

impl Serialize for Ball {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        BallRecord::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Ball {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ball::try_from(BallRecord::deserialize(deserializer)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EllipsoidRecord {
    pub center: Vec<f64>,
    pub shape: Vec<Vec<f64>>,
}

impl EllipsoidRecord {
    pub fn into_ellipsoid(self, tol: Tolerances) -> Result<Ellipsoid> {
        let n = self.center.len();
        if self.shape.len() != n || self.shape.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidInput(format!(
                "ellipsoid shape must be {n}x{n}"
            )));
        }
        let shape = DMatrix::from_fn(n, n, |i, j| self.shape[i][j]);
        Ellipsoid::with_symmetry_tol(Vector::from_vec(self.center), shape, tol.symmetry)
    }
}

impl TryFrom<EllipsoidRecord> for Ellipsoid {
    type Error = Error;
    fn try_from(r: EllipsoidRecord) -> Result<Ellipsoid> {
        r.into_ellipsoid(Tolerances::default())
    }
}

impl From<&Ellipsoid> for EllipsoidRecord {
    fn from(e: &Ellipsoid) -> Self {
        let q = e.shape();
        Self {
            center: e.center().iter().copied().collect(),
            shape: q.row_iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }
}

impl Serialize for Ellipsoid {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        EllipsoidRecord::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Ellipsoid {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ellipsoid::try_from(EllipsoidRecord::deserialize(deserializer)?)
            .map_err(serde::de::Error::custom)
    }
}

/// Serializes a point as a plain JSON array.
pub(crate) mod vector_serde {
    use super::Vector;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Vector, s: S) -> Result<S::Ok, S::Error> {
        v.as_slice().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vector, D::Error> {
        Ok(Vector::from_vec(Vec::<f64>::deserialize(d)?))
    }
}
