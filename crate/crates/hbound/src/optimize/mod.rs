//! Maximization of the exponent family `alpha(t)` over the window
//! `(1 - k, 1 - k^2)`.
//!
//! `alpha` is strictly concave on the window (see [`concavity`]), so a
//! golden-section search converges cleanly. The maximizer is independently
//! characterized as the interval root of an explicit quartic (see
//! [`quartic`]); `maximize_alpha` reports residuals against both
//! characterizations plus the agreement between the two locations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{alpha_of_t, t1_prime, TSplit};

pub mod concavity;
pub mod quartic;

pub use concavity::{certify_concavity, phi_coefficients, ConcavityCertificate, PhiCoefficients};
pub use quartic::{eval_nk, quartic_coeffs, quartic_roots_in_interval, QuarticNk};

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// The optimization window `(1 - k, 1 - k^2)`.
pub fn t_window(k: f64) -> (f64, f64) {
    (1.0 - k, 1.0 - k * k)
}

/// `d/dt (t1 + t)` in closed form:
/// `(2 (1 - t)^2 - k^2 (1 + (1 - t)^2)) / ((1 - k^2) (1 - t)^2)`.
pub fn s_prime(k: f64, t: f64) -> Result<f64> {
    let omt = 1.0 - t;
    let omt2 = omt * omt;
    t1_prime(k, t)?; // same domain; reuse its validation
    Ok((2.0 * omt2 - k * k * (1.0 + omt2)) / ((1.0 - k * k) * omt2))
}

/// `d/dt (t1 * t)` in closed form:
/// `(2 (1 - t)^2 - k^2 (2 - t)) t / ((1 - k^2) (1 - t)^2)`.
pub fn p_prime(k: f64, t: f64) -> Result<f64> {
    let omt = 1.0 - t;
    let omt2 = omt * omt;
    t1_prime(k, t)?;
    Ok((2.0 * omt2 - k * k * (2.0 - t)) * t / ((1.0 - k * k) * omt2))
}

/// Derivative of the exponent family,
/// `alpha'(t) = ((S S' + 6 P') / sqrt(S^2 + 12 P) - S') / 2`.
///
/// Requires `0 < t < 1 - k^2` so that both weights are positive.
pub fn alpha_prime(k: f64, t: f64) -> Result<f64> {
    let split = TSplit::new(k, t)?;
    let sp = s_prime(k, t)?;
    let pp = p_prime(k, t)?;
    let root = (split.s * split.s + 12.0 * split.p).sqrt();
    Ok(0.5 * ((split.s * sp + 6.0 * pp) / root - sp))
}

/// Stationarity combination `S S' P' + 3 P'^2 - P S'^2`.
///
/// Vanishes exactly at critical points of `alpha`; away from them it is of
/// order one. Returned raw, together with the magnitude sum used to
/// normalize it.
pub fn stationarity_residual(k: f64, t: f64) -> Result<(f64, f64)> {
    let split = TSplit::new(k, t)?;
    let sp = s_prime(k, t)?;
    let pp = p_prime(k, t)?;
    let value = split.s * sp * pp + 3.0 * pp * pp - split.p * sp * sp;
    let scale = (split.s * sp * pp).abs() + 3.0 * pp * pp + split.p * sp * sp;
    Ok((value, scale.max(1.0)))
}

/// Variant of [`stationarity_residual`] with the middle term `3 P'` instead
/// of `3 P'^2`. Kept as a diagnostic: it does not vanish at the maximizer,
/// which is how one detects that the squared form is the meaningful one.
pub fn stationarity_residual_unsquared(k: f64, t: f64) -> Result<(f64, f64)> {
    let split = TSplit::new(k, t)?;
    let sp = s_prime(k, t)?;
    let pp = p_prime(k, t)?;
    let value = split.s * sp * pp + 3.0 * pp - split.p * sp * sp;
    let scale = (split.s * sp * pp).abs() + 3.0 * pp.abs() + split.p * sp * sp;
    Ok((value, scale.max(1.0)))
}

/// Everything known about the maximizer of `alpha` on the window.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CriticalPoint {
    pub k: f64,
    pub t_star: f64,
    pub alpha_star: f64,
    /// `|N_k(t_star)|` over the largest quartic coefficient.
    pub quartic_residual: f64,
    /// `|alpha'(t_star)|`.
    pub derivative_residual: f64,
    /// Distance from `t_star` to the nearest interval root of the quartic;
    /// NaN when the root finder returns no interval root.
    pub agreement: f64,
    /// Normalized stationarity residual at `t_star` (squared form).
    pub stationarity: f64,
    /// Normalized residual of the unsquared variant, for contrast.
    pub stationarity_unsquared: f64,
}

/// Golden-section maximization of `alpha(t)` on `(1 - k, 1 - k^2)`.
///
/// The bracket starts at an offset of `1e-12` times the window width from
/// each endpoint and shrinks until its width drops below `tol`. Requires
/// `0 < k < 1`; at `k = 0` the window is empty and the caller should fall
/// back to the continuity values `alpha = 1`, `t = 1`.
pub fn maximize_alpha(k: f64, tol: f64) -> Result<CriticalPoint> {
    if !k.is_finite() || !(0.0..1.0).contains(&k) {
        return Err(Error::KOutOfRange(k));
    }
    if k == 0.0 {
        return Err(Error::DegenerateInterval(k));
    }
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::BadTol(tol));
    }
    let (lo, hi) = t_window(k);
    let width = hi - lo;
    let eps = 1e-12 * width;
    let mut a = lo + eps;
    let mut b = hi - eps;

    let f = |t: f64| alpha_of_t(k, t).expect("bracket stays inside the window");
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let mut t_star = 0.5 * (a + b);
    // Near the flat maximum the golden-section comparisons are dominated by
    // rounding noise, which can leave the bracket center about 1e-8 from the
    // critical point. Polish with Newton on alpha'(t) = 0 (second derivative
    // by central difference) to push the derivative residual to the
    // floating-point floor.
    let h = 1e-5 * width;
    for _ in 0..8 {
        let d1 = alpha_prime(k, t_star)?;
        if d1.abs() < 1e-14 {
            break;
        }
        let hl = h.min(0.5 * (t_star - lo)).min(0.5 * (hi - t_star));
        let d2 = (alpha_prime(k, t_star + hl)? - alpha_prime(k, t_star - hl)?) / (2.0 * hl);
        if !d2.is_finite() || d2 >= 0.0 {
            break;
        }
        let next = (t_star - d1 / d2).clamp(lo + eps, hi - eps);
        if (next - t_star).abs() < f64::EPSILON * t_star.abs() {
            t_star = next;
            break;
        }
        t_star = next;
    }
    let alpha_star = f(t_star);

    let q = quartic_coeffs(k);
    let quartic_residual = eval_nk(&q, t_star).abs() / q.inf_norm();
    let derivative_residual = alpha_prime(k, t_star)?.abs();
    let roots = quartic_roots_in_interval(&q);
    let agreement = roots
        .iter()
        .map(|r| (r - t_star).abs())
        .fold(f64::NAN, |acc: f64, d| if acc.is_nan() { d } else { acc.min(d) });
    let (sv, ss) = stationarity_residual(k, t_star)?;
    let (uv, us) = stationarity_residual_unsquared(k, t_star)?;
    Ok(CriticalPoint {
        k,
        t_star,
        alpha_star,
        quartic_residual,
        derivative_residual,
        agreement,
        stationarity: sv.abs() / ss,
        stationarity_unsquared: uv.abs() / us,
    })
}

/// One-sided derivative values just inside the window endpoints.
///
/// Analytically `alpha'(1-k) = ((8 + k) / sqrt(k^2 + 16k + 16) - 1) / 2 > 0`
/// and `alpha'(t) -> -3/k^2` as `t -> 1 - k^2`; the certificate in
/// [`concavity`] checks the signs numerically.
pub fn endpoint_derivatives(k: f64, offset_frac: f64) -> Result<(f64, f64)> {
    let (lo, hi) = t_window(k);
    if hi <= lo {
        return Err(Error::DegenerateInterval(k));
    }
    let off = offset_frac * (hi - lo);
    Ok((alpha_prime(k, lo + off)?, alpha_prime(k, hi - off)?))
}

/// Closed-form value of `alpha'` at the left endpoint `t = 1 - k`.
pub fn alpha_prime_left_closed_form(k: f64) -> f64 {
    0.5 * ((8.0 + k) / (k * k + 16.0 * k + 16.0).sqrt() - 1.0)
}

/// Limit of `alpha'` at the right endpoint `t = 1 - k^2`: `-3 / k^2`.
pub fn alpha_prime_right_limit(k: f64) -> f64 {
    -3.0 / (k * k)
}

/// Maximizer with the degenerate case folded in: at `k = 0` the family
/// degenerates and the exponent continuously extends to `alpha = 1` at
/// `t = 1`.
pub fn alpha_star_or_limit(k: f64, tol: f64) -> Result<(f64, f64)> {
    if k == 0.0 {
        return Ok((1.0, 1.0));
    }
    let cp = maximize_alpha(k, tol)?;
    Ok((cp.alpha_star, cp.t_star))
}
