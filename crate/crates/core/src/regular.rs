//! Regular simplices inscribed in a ball and the closed-form norm of
//! their interpolation projector.
//!
//! For a regular simplex inscribed in a ball the projector norm is
//! `max{ψ(a), ψ(a+1)}` with
//!
//! ```text
//! ψ(t) = 2√n/(n+1) · sqrt(t(n+1-t)) + |1 - 2t/(n+1)|,   a = ⌊(n+1)/2 - √(n+1)/2⌋.
//! ```
//!
//! `k(n)` is whichever of `a`, `a+1` attains the larger value (ties go to
//! `a+1`), and `N = C(n+1, k)` counts the maximum points of `Σ|λ_j|`.

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Ball, Simplex, Vector};

/// The norm profile `ψ(t)` for dimension `n`, defined on `0 ≤ t ≤ n+1`.
pub fn psi(n: usize, t: f64) -> Result<f64> {
    let m = (n + 1) as f64;
    if !(0.0..=m).contains(&t) {
        return Err(Error::Domain(format!("psi: t = {t} outside [0, {m}]")));
    }
    let root = (t * (m - t)).max(0.0).sqrt();
    Ok(2.0 * (n as f64).sqrt() / m * root + (1.0 - 2.0 * t / m).abs())
}

fn psi_int(n: usize, t: usize) -> f64 {
    psi(n, t as f64).expect("integer argument within [0, n+1]")
}

/// `a = ⌊(n+1)/2 - √(n+1)/2⌋`
pub fn a_of(n: usize) -> usize {
    let m = (n + 1) as f64;
    ((m - m.sqrt()) / 2.0).floor() as usize
}

/// `k(n) = a+1` when `ψ(a+1) ≥ ψ(a)`, else `a`.
pub fn k_of(n: usize) -> usize {
    let a = a_of(n);
    if psi_int(n, a + 1) >= psi_int(n, a) {
        a + 1
    } else {
        a
    }
}

/// Projector norm of any regular simplex inscribed in any ball in `R^n`.
pub fn regular_norm(n: usize) -> f64 {
    psi_int(n, k_of(n))
}

/// The reference regular simplex `e_1, ..., e_n, ((1-√(n+1))/n, ...)` with
/// edges of length `√2`, together with its circumscribed ball.
#[derive(Debug, Clone)]
pub struct RegularConfig {
    pub n: usize,
    pub simplex: Simplex,
    pub ball: Ball,
}

/// Builds the reference configuration in dimension `n ≥ 1`.
pub fn regular_inscribed(n: usize) -> RegularConfig {
    assert!(n >= 1, "dimension must be at least 1");
    let nf = n as f64;
    let m = nf + 1.0;
    let last = (1.0 - m.sqrt()) / nf;
    let mut vertices: Vec<Vector> = (0..n)
        .map(|i| {
            let mut e = Vector::zeros(n);
            e[i] = 1.0;
            e
        })
        .collect();
    vertices.push(Vector::from_element(n, last));
    let center = Vector::from_element(n, (1.0 - (1.0 / m).sqrt()) / nf);
    let radius = (nf / m).sqrt();
    RegularConfig {
        n,
        simplex: Simplex::new(vertices).expect("regular simplex is nondegenerate"),
        ball: Ball::new(center, radius).expect("positive radius"),
    }
}

/// Maps the reference configuration into `ball` by scaling and translation
/// (no rotation).
pub fn regular_in_ball(ball: &Ball) -> Result<Simplex> {
    let n = ball.dim();
    if n == 0 {
        return Err(Error::InvalidInput(
            "ball dimension must be at least 1".into(),
        ));
    }
    let cfg = regular_inscribed(n);
    let scale = ball.radius() / cfg.ball.radius();
    let vertices = cfg
        .simplex
        .vertices()
        .iter()
        .map(|v| ball.center() + (v - cfg.ball.center()) * scale)
        .collect();
    Simplex::new(vertices)
}

/// Regular simplex inscribed in the unit ball `B_n` centered at the origin.
pub fn regular_in_unit_ball(n: usize) -> Simplex {
    regular_in_ball(&Ball::unit(n)).expect("regular simplex in B_n")
}

/// Exact binomial coefficient `C(m, r)`; zero when `r > m`.
pub fn binomial_exact(m: u64, r: u64) -> BigUint {
    if r > m {
        return BigUint::from(0u32);
    }
    let r = r.min(m - r);
    let mut acc = BigUint::one();
    for i in 1..=r {
        // acc = C(m - r + i - 1, i - 1) here, so the division is exact.
        acc *= m - r + i;
        acc /= i;
    }
    acc
}

/// One row of the `(n, a, k, N)` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub a: usize,
    pub k: usize,
    #[serde(rename = "N", with = "biguint_string")]
    pub count: BigUint,
}

mod biguint_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

pub fn table_row(n: usize) -> TableRow {
    let k = k_of(n);
    TableRow {
        n,
        a: a_of(n),
        k,
        count: binomial_exact(n as u64 + 1, k as u64),
    }
}

/// Rows for `n = 1..=n_max`.
pub fn table1(n_max: usize) -> Vec<TableRow> {
    (1..=n_max).map(table_row).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_values() {
        assert!((psi(1, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((psi(1, 1.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((psi(2, 1.0).unwrap() - 5.0 / 3.0).abs() < 1e-12);
        assert!((psi(3, 1.0).unwrap() - 2.0).abs() < 1e-12);
        for n in 1..30 {
            assert!((psi(n, 0.0).unwrap() - 1.0).abs() < 1e-12);
            assert!((psi(n, (n + 1) as f64).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn psi_domain() {
        assert!(matches!(psi(3, -0.1), Err(Error::Domain(_))));
        assert!(matches!(psi(3, 4.01), Err(Error::Domain(_))));
        assert!(psi(3, f64::NAN).is_err());
    }

    #[test]
    fn a_and_k() {
        assert_eq!((a_of(1), k_of(1)), (0, 1));
        assert_eq!(k_of(4), 1);
        assert_eq!(k_of(5), 2);
        assert_eq!(k_of(7), 3);
        assert_eq!(k_of(50), 22);
        assert_eq!(k_of(100), 45);
    }

    #[test]
    fn closed_form_norms() {
        assert!((regular_norm(1) - 1.0).abs() < 1e-12);
        assert!((regular_norm(2) - 5.0 / 3.0).abs() < 1e-12);
        assert!((regular_norm(3) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reference_configuration() {
        let c1 = regular_inscribed(1);
        assert_eq!(c1.simplex.vertex(0)[0], 1.0);
        assert!((c1.simplex.vertex(1)[0] - (1.0 - 2f64.sqrt())).abs() < 1e-15);
        assert!((c1.ball.center()[0] - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
        assert!((c1.ball.radius() - 0.5f64.sqrt()).abs() < 1e-15);

        for n in [2, 3, 7, 10] {
            let cfg = regular_inscribed(n);
            let vs = cfg.simplex.vertices();
            for i in 0..=n {
                assert!(((&vs[i] - cfg.ball.center()).norm() - cfg.ball.radius()).abs() < 1e-10);
                for j in 0..i {
                    assert!(((&vs[i] - &vs[j]).norm() - 2f64.sqrt()).abs() < 1e-10);
                }
            }
            assert!((cfg.simplex.centroid() - cfg.ball.center()).amax() < 1e-10);
        }
    }

    #[test]
    fn regular_in_given_ball() {
        let ball = Ball::new(Vector::from_row_slice(&[1.0, -2.0, 0.5]), 3.5).unwrap();
        let s = regular_in_ball(&ball).unwrap();
        for v in s.vertices() {
            assert!(((v - ball.center()).norm() - 3.5).abs() < 1e-12);
        }
        assert!((s.centroid() - ball.center()).amax() < 1e-12);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_exact(6, 2), BigUint::from(15u32));
        assert_eq!(binomial_exact(51, 22).to_string(), "156077261327400");
        assert_eq!(binomial_exact(51, 23).to_string(), "196793068630200");
        assert_eq!(
            binomial_exact(101, 45).to_string(),
            "110826707011209895344085355160"
        );
        assert_eq!(binomial_exact(5, 0), BigUint::one());
        assert_eq!(binomial_exact(5, 6), BigUint::from(0u32));
    }

    #[test]
    fn table_rows() {
        let rows = table1(15);
        assert_eq!(rows.len(), 15);
        let r9 = &rows[8];
        assert_eq!((r9.k, r9.count.to_string().as_str()), (3, "120"));
        assert_eq!(
            (rows[12].k, rows[12].count.to_string().as_str()),
            (5, "2002")
        );
        assert_eq!(
            (rows[13].k, rows[13].count.to_string().as_str()),
            (6, "5005")
        );
        let json = serde_json::to_string(&rows[4]).unwrap();
        assert_eq!(json, r#"{"n":5,"a":1,"k":2,"N":"15"}"#);
    }
}
