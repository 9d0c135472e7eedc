//! Closed-form Holder exponents for K-quasiregular gradient mappings.
//!
//! All formulas are functions of the Beltrami bound `k in [0, 1)` or,
//! equivalently, the distortion `K = (1 + k) / (1 - k)`. The classical
//! exponent is `1/K`. Sharper bounds come from a one-parameter family
//! `alpha(t)` built out of a weight pair `(t1(t), t)`: the value at the left
//! endpoint `t = 1 - k` reproduces the Baernstein-Kovalev exponent `alpha1`,
//! the value at `t0 = (1 - k)(1 + k/4)` gives the explicit exponent `alpha0`,
//! and maximizing over `t` gives the optimal member `alpha_star` (see the
//! `optimize` module). A simpler symmetric choice yields `alpha2`, which beats
//! `1/K` exactly beyond a computable crossover distortion.

use serde::Serialize;

use crate::error::{Error, Result};

/// Ratio appearing in the symmetric-split exponent: `(sqrt(33) - 3) / 4`.
pub const NU: f64 = 0.686_140_661_634_507_2;

/// Beltrami bound `k` and distortion `K = (1 + k) / (1 - k)`, kept consistent
/// by construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistortionParams {
    pub k: f64,
    pub big_k: f64,
}

/// Build from the Beltrami bound `k in [0, 1)`.
pub fn distortion_from_k(k: f64) -> Result<DistortionParams> {
    if !k.is_finite() || !(0.0..1.0).contains(&k) {
        return Err(Error::KOutOfRange(k));
    }
    Ok(DistortionParams {
        k,
        big_k: (1.0 + k) / (1.0 - k),
    })
}

/// Build from the distortion `K >= 1`.
pub fn distortion_from_big_k(big_k: f64) -> Result<DistortionParams> {
    if !big_k.is_finite() || big_k < 1.0 {
        return Err(Error::BigKOutOfRange(big_k));
    }
    Ok(DistortionParams {
        k: (big_k - 1.0) / (big_k + 1.0),
        big_k,
    })
}

/// Ellipticity data of a divergence-form coefficient matrix with eigenvalue
/// bounds `lambda <= Lambda` and an optional drift bound `g_sup`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EllipticConstants {
    pub lambda: f64,
    pub big_lambda: f64,
    pub g_sup: f64,
    /// Distortion of the gradient field: `Lambda / lambda`.
    pub k_out: f64,
    /// Beltrami bound of the gradient field: `(Lambda - lambda) / (Lambda + lambda)`.
    pub k_prime: f64,
}

/// Distortion constants induced by eigenvalue bounds `0 < lambda <= Lambda`.
pub fn elliptic_constants(lambda: f64, big_lambda: f64, g_sup: f64) -> Result<EllipticConstants> {
    if !(lambda.is_finite() && big_lambda.is_finite() && lambda > 0.0 && big_lambda >= lambda) {
        return Err(Error::BadEigenvalues { lambda, big_lambda });
    }
    if !g_sup.is_finite() || g_sup < 0.0 {
        return Err(Error::NonFinite("g_sup"));
    }
    Ok(EllipticConstants {
        lambda,
        big_lambda,
        g_sup,
        k_out: big_lambda / lambda,
        k_prime: (big_lambda - lambda) / (big_lambda + lambda),
    })
}

/// Classical exponent `1/K = (1 - k) / (1 + k)`.
pub fn alpha_classical(params: &DistortionParams) -> f64 {
    (1.0 - params.k) / (1.0 + params.k)
}

/// Baernstein-Kovalev exponent
/// `alpha1 = (1 - k) (sqrt(k^2 + 16k + 16) - k - 2) / (2 (1 + k))`.
pub fn alpha1(params: &DistortionParams) -> f64 {
    let k = params.k;
    (1.0 - k) * ((k * k + 16.0 * k + 16.0).sqrt() - k - 2.0) / (2.0 * (1.0 + k))
}

/// First weight of the pair as a function of the second:
/// `t1 = ((1 - k^2 - t) t) / ((1 - k^2) (1 - t))`.
///
/// Positive iff `t < 1 - k^2`; vanishes at `t = 1 - k^2`; equals `1/K` at
/// `t = 1 - k`. The map is singular at `t = 1`.
pub fn t1_of(k: f64, t: f64) -> Result<f64> {
    if !k.is_finite() || !(0.0..1.0).contains(&k) {
        return Err(Error::KOutOfRange(k));
    }
    if !t.is_finite() || t <= 0.0 || t >= 1.0 {
        return Err(Error::TOutOfRange(t));
    }
    let one_m_k2 = 1.0 - k * k;
    Ok((one_m_k2 - t) * t / (one_m_k2 * (1.0 - t)))
}

/// Derivative of [`t1_of`] in `t`: `((1 - t)^2 - k^2) / ((1 - k^2) (1 - t)^2)`.
pub fn t1_prime(k: f64, t: f64) -> Result<f64> {
    if !k.is_finite() || !(0.0..1.0).contains(&k) {
        return Err(Error::KOutOfRange(k));
    }
    if !t.is_finite() || t <= 0.0 || t >= 1.0 {
        return Err(Error::TOutOfRange(t));
    }
    let omt = 1.0 - t;
    Ok((omt * omt - k * k) / ((1.0 - k * k) * omt * omt))
}

/// Exponent attached to an arbitrary positive weight pair:
/// `alpha = (sqrt(S^2 + 12 P) - S) / 2` with `S = t1 + t2`, `P = t1 t2`.
///
/// Equivalently, `alpha` is the positive root of `u^2 + S u - 3 P = 0`; for a
/// symmetric pair `t1 = t2 = u` it collapses to `alpha = u`.
pub fn alpha_from_pair(t1: f64, t2: f64) -> f64 {
    let s = t1 + t2;
    let p = t1 * t2;
    0.5 * ((s * s + 12.0 * p).sqrt() - s)
}

/// A weight pair `(t1, t2) = (t1(t), t)` together with its elementary
/// symmetric functions.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TSplit {
    pub k: f64,
    pub t: f64,
    pub t1: f64,
    pub t2: f64,
    /// `t1 + t2`
    pub s: f64,
    /// `t1 * t2`
    pub p: f64,
    /// Whether `t` lies in the open optimization window `(1 - k, 1 - k^2)`.
    pub in_window: bool,
}

impl TSplit {
    /// Build the pair for a given `t`. Errors if the induced first weight is
    /// nonpositive, i.e. if `t >= 1 - k^2`.
    pub fn new(k: f64, t: f64) -> Result<Self> {
        let t1 = t1_of(k, t)?;
        if t1 <= 0.0 {
            return Err(Error::SplitOutOfDomain { t, hi: 1.0 - k * k });
        }
        Ok(TSplit {
            k,
            t,
            t1,
            t2: t,
            s: t1 + t,
            p: t1 * t,
            in_window: 1.0 - k < t && t < 1.0 - k * k,
        })
    }

    /// Exponent of the pair.
    pub fn alpha(&self) -> f64 {
        alpha_from_pair(self.t1, self.t2)
    }
}

/// The exponent family `alpha(t)` on `0 < t < 1 - k^2`.
pub fn alpha_of_t(k: f64, t: f64) -> Result<f64> {
    Ok(TSplit::new(k, t)?.alpha())
}

/// The explicit evaluation point `t0 = (1 - k)(1 + k/4)`.
pub fn t0_of(k: f64) -> f64 {
    (1.0 - k) * (1.0 + 0.25 * k)
}

/// Explicit exponent `alpha0 = alpha(t0)`, written out in closed form.
///
/// The literal radical expression is cross-checked against the family value
/// `alpha_of_t(k, t0)`; if the two ever drift beyond 1e-10 the family value
/// wins, since `t0` is defined as an evaluation point of the family.
pub fn alpha0(params: &DistortionParams) -> f64 {
    let k = params.k;
    if k == 0.0 {
        return 1.0;
    }
    let lit = alpha0_literal(k);
    let via = alpha_of_t(k, t0_of(k)).expect("t0 lies inside (0, 1 - k^2)");
    if (lit - via).abs() > 1e-10 {
        via
    } else {
        lit
    }
}

fn alpha0_literal(k: f64) -> f64 {
    let w = k * (4.0 + k);
    let root = (144.0 + w * (48.0 + w)).sqrt();
    ((1.0 - k) * (4.0 + k) * root / ((1.0 + k) * (3.0 + k)) + k * (3.0 + k)
        - 3.0 * (7.0 + k) / ((3.0 + k) * (1.0 + k))
        - 1.0)
        / 8.0
}

/// Symmetric-split exponent
/// `alpha2 = nu (1 - k^2) / (1 + k^2)` with `nu = (sqrt(33) - 3) / 4`.
pub fn alpha2(params: &DistortionParams) -> f64 {
    let k = params.k;
    NU * (1.0 - k * k) / (1.0 + k * k)
}

/// The unequal weight pair behind `alpha2`: `(u/2, u)` with
/// `u = (1 - k^2) / (1 + k^2)`.
pub fn alpha2_split(k: f64) -> (f64, f64) {
    let u = (1.0 - k * k) / (1.0 + k * k);
    (0.5 * u, u)
}

/// Distortion bound at which `alpha2` crosses the classical exponent.
///
/// Solves `nu (1 + k)^2 = 1 + k^2` by bisection on `(0, 1)` to the requested
/// interval width. In closed form the root is `m - sqrt(m^2 - 1)` with
/// `m = nu / (1 - nu)`; below it `alpha2 < 1/K`, above it `alpha2 > 1/K`.
pub fn crossover_k(tol: f64) -> Result<f64> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::BadTol(tol));
    }
    let gap = |k: f64| {
        let p = DistortionParams {
            k,
            big_k: (1.0 + k) / (1.0 - k),
        };
        alpha2(&p) - alpha_classical(&p)
    };
    let (mut lo, mut hi) = (1e-3, 1.0 - 1e-3);
    debug_assert!(gap(lo) < 0.0 && gap(hi) > 0.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Closed form of the crossover bound, for cross-checking the bisection.
pub fn crossover_k_closed_form() -> f64 {
    let m = NU / (1.0 - NU);
    m - (m * m - 1.0).sqrt()
}
