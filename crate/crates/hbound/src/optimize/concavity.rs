//! Concavity certificate for `alpha(t)` on the optimization window.
//!
//! Three independent pieces of evidence back the golden-section search:
//! the one-sided derivative signs at the window endpoints (positive on the
//! left, negative on the right), a strictly negative second derivative on a
//! dense grid, and positivity of the quadratic `phi(t) = a t^2 - b t + c`
//! whose sign controls the quartic's behaviour on the window. `phi` opens
//! upward, has discriminant `80 k^4 (1 - k^2)^2`, and both of its roots lie
//! at or beyond `1 - k^2`, so it stays positive on the window interior.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::optimize::{alpha_prime, t_window};

/// Window endpoint derivative signs plus grid evidence of strict concavity.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConcavityCertificate {
    pub k: f64,
    /// `alpha'` just inside the left endpoint; certifying run expects `> 0`.
    pub dalpha_left: f64,
    /// `alpha'` just inside the right endpoint; certifying run expects `< 0`.
    pub dalpha_right: f64,
    /// Minimum of `phi` over the closed window.
    pub phi_min_on_window: f64,
    /// Largest second-derivative value seen on the grid; expected `< 0`.
    pub grid_second_deriv_max: f64,
}

/// Coefficients and roots of `phi(t) = a t^2 - b t + c`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PhiCoefficients {
    pub k: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Discriminant `b^2 - 4ac`; equals `80 k^4 (1 - k^2)^2` identically.
    pub delta: f64,
    /// Smaller root `(b - sqrt(delta)) / (2a)`; lies at or beyond `1 - k^2`.
    pub x1: f64,
    /// Larger root `(b + sqrt(delta)) / (2a)`.
    pub x2: f64,
}

/// Build `phi` for a given `k`.
///
/// `a = 16 - 20 k^2 + 5 k^4` stays positive on `[0, 1)` (its roots in `k^2`
/// lie beyond 1), so `phi` always opens upward.
pub fn phi_coefficients(k: f64) -> PhiCoefficients {
    let k2 = k * k;
    let k4 = k2 * k2;
    let omk2 = 1.0 - k2;
    let a = 16.0 - 20.0 * k2 + 5.0 * k4;
    let b = 32.0 - 52.0 * k2 + 20.0 * k4;
    let c = 16.0 * omk2 * omk2;
    let delta = b * b - 4.0 * a * c;
    let sqrt_delta = delta.max(0.0).sqrt();
    PhiCoefficients {
        k,
        a,
        b,
        c,
        delta,
        x1: (b - sqrt_delta) / (2.0 * a),
        x2: (b + sqrt_delta) / (2.0 * a),
    }
}

fn phi_eval(p: &PhiCoefficients, t: f64) -> f64 {
    (p.a * t - p.b) * t + p.c
}

/// Assemble the certificate for one `k` on a grid of `grid_size` interior
/// points.
///
/// Endpoint derivatives are taken at an offset of `1e-9` times the window
/// width. Second derivatives are central differences of [`alpha_prime`] with
/// a half-cell step, so every evaluation stays strictly inside the window.
/// Requires `0 < k < 1` and `grid_size >= 16`.
pub fn certify_concavity(k: f64, grid_size: usize) -> Result<ConcavityCertificate> {
    if !k.is_finite() || !(0.0..1.0).contains(&k) {
        return Err(Error::KOutOfRange(k));
    }
    if k == 0.0 {
        return Err(Error::DegenerateInterval(k));
    }
    if grid_size < 16 {
        return Err(Error::BadGrid(format!(
            "concavity grid needs at least 16 points, got {grid_size}"
        )));
    }
    let (lo, hi) = t_window(k);
    let width = hi - lo;
    let off = 1e-9 * width;
    let dalpha_left = alpha_prime(k, lo + off)?;
    let dalpha_right = alpha_prime(k, hi - off)?;

    let h = width / (grid_size + 1) as f64;
    let step = 0.5 * h;
    let mut second_max = f64::NEG_INFINITY;
    for i in 1..=grid_size {
        let t = lo + h * i as f64;
        let d2 = (alpha_prime(k, t + step)? - alpha_prime(k, t - step)?) / (2.0 * step);
        second_max = second_max.max(d2);
    }

    let phi = phi_coefficients(k);
    let vertex = phi.b / (2.0 * phi.a);
    let mut phi_min = phi_eval(&phi, lo).min(phi_eval(&phi, hi));
    if (lo..=hi).contains(&vertex) {
        phi_min = phi_min.min(phi_eval(&phi, vertex));
    }

    Ok(ConcavityCertificate {
        k,
        dalpha_left,
        dalpha_right,
        phi_min_on_window: phi_min,
        grid_second_deriv_max: second_max,
    })
}
