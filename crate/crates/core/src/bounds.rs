//! The Legendre-polynomial lower bound `‖P‖_{B_n} ≥ χ_n^{-1}(K_n)`.

use crate::error::{Error, Result};
use crate::extremal::ln_volume_ratio;

/// `∛π / (√(12e) · ⁶√3) = 0.2135...`, the constant in `χ_n^{-1}(K_n) > C √n`.
pub fn lower_bound_constant() -> f64 {
    std::f64::consts::PI.cbrt() / ((12.0 * std::f64::consts::E).sqrt() * 3f64.powf(1.0 / 6.0))
}

/// Standardized Legendre polynomial `χ_n(t)` by the three-term recurrence
/// `k χ_k = (2k-1) t χ_{k-1} - (k-1) χ_{k-2}`.
pub fn legendre_chi(n: usize, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let (mut prev, mut cur) = (1.0, t);
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * t * cur - (kf - 1.0) * prev) / kf;
        prev = cur;
        cur = next;
    }
    cur
}

/// `ln χ_n(t)` for `t ≥ 1`, rescaling the recurrence so large `n` and `t`
/// do not overflow.
pub fn ln_legendre_chi(n: usize, t: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let (mut prev, mut cur, mut log_scale) = (1.0, t, 0.0);
    for k in 2..=n {
        let kf = k as f64;
        let next = ((2.0 * kf - 1.0) * t * cur - (kf - 1.0) * prev) / kf;
        prev = cur;
        cur = next;
        if cur.abs() > 1e200 {
            prev /= cur;
            log_scale += cur.ln();
            cur = 1.0;
        }
    }
    log_scale + cur.ln()
}

/// The `t ≥ 1` with `χ_n(t) = v`, by bisection down to adjacent floats.
/// `χ_n` is strictly increasing on `[1, ∞)` with `χ_n(1) = 1`.
pub fn chi_inverse(n: usize, v: f64) -> Result<f64> {
    if !(v >= 1.0) || !v.is_finite() {
        return Err(Error::Domain(format!("chi_inverse: value {v} < 1")));
    }
    chi_inverse_ln(n, v.ln())
}

/// [`chi_inverse`] for a target given by its logarithm `ln v ≥ 0`.
pub fn chi_inverse_ln(n: usize, ln_v: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Domain("chi_inverse requires n >= 1".into()));
    }
    if !(ln_v >= 0.0) || !ln_v.is_finite() {
        return Err(Error::Domain(format!("chi_inverse: ln value {ln_v} < 0")));
    }
    if ln_v == 0.0 {
        return Ok(1.0);
    }
    let mut lo = 1.0_f64;
    let mut hi = 2.0_f64;
    while ln_legendre_chi(n, hi) < ln_v {
        lo = hi;
        hi *= 2.0;
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if ln_legendre_chi(n, mid) < ln_v {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Return whichever endpoint is closer in value.
    if (ln_legendre_chi(n, lo) - ln_v).abs() <= (ln_legendre_chi(n, hi) - ln_v).abs() {
        Ok(lo)
    } else {
        Ok(hi)
    }
}

/// `χ_n^{-1}(K_n)`, a lower bound for the norm of every interpolation
/// projector with nodes in an `n`-dimensional ball or ellipsoid.
/// Panics for `n = 0`.
pub fn lower_bound(n: usize) -> f64 {
    // K_1 = 1 exactly; rounding in the log-gamma evaluation can land just below.
    chi_inverse_ln(n, ln_volume_ratio(n).max(0.0)).expect("n >= 1 and ln K_n >= 0")
}
