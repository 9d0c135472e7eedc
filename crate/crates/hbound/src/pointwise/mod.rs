//! Pointwise verification of the algebra behind the weighted Jacobian bound.
//!
//! A gradient field with Beltrami coefficient of modulus `|mu|` and direction
//! parameter `varsigma` determines, up to scale, the triple `(p, q, s)` of
//! second derivatives and through it both derivatives `f_z`, `f_zbar`. The
//! checks here confirm the polar parametrization (Beltrami equation, two ways
//! of computing the Jacobian, the Jacobian identity in `(p, q, s)`) and sweep
//! the weighted lower bound `J_f >= t1 p^2 + t2 q^2` over dense grids.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::t1_of;
use crate::mc::{self, Merge};

pub mod discrete;

/// Second-derivative data of a gradient field at one point, in the polar
/// parametrization by `(|mu|, varsigma)` at unit scale `p`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct PQSSample {
    pub mu_abs: f64,
    pub varsigma: f64,
    pub p: f64,
    pub q: f64,
    pub s: f64,
    pub fz: Complex64,
    pub fzbar: Complex64,
    /// Jacobian `q^2 - p s`.
    pub jac: f64,
}

/// Construct the triple from the polar data:
/// `s = p (|mu| + cos varsigma) / (|mu| - cos varsigma)`,
/// `q = p sin varsigma / (cos varsigma - |mu|)`.
///
/// Requires `0 <= |mu| < 1` and a direction bounded away from the singular
/// one: `|cos varsigma - |mu|| > 1e-12`.
pub fn pqs_from_polar(mu_abs: f64, varsigma: f64, p: f64) -> Result<PQSSample> {
    if !mu_abs.is_finite() || !(0.0..1.0).contains(&mu_abs) {
        return Err(Error::KOutOfRange(mu_abs));
    }
    if !varsigma.is_finite() || !p.is_finite() {
        return Err(Error::NonFinite("varsigma or p"));
    }
    let c = varsigma.cos();
    let den = mu_abs - c;
    if den.abs() <= 1e-12 {
        return Err(Error::SingularDirection { mu_abs, varsigma });
    }
    let s = p * (mu_abs + c) / den;
    let q = -p * varsigma.sin() / den;
    // Second derivatives of the potential, written at reference angle 0:
    // f_zbar is real, f_z collects the rest.
    let fzbar = Complex64::new(0.5 * (s + p), 0.0);
    let fz = Complex64::new(0.5 * (s - p), -q);
    Ok(PQSSample {
        mu_abs,
        varsigma,
        p,
        q,
        s,
        fz,
        fzbar,
        jac: q * q - p * s,
    })
}

impl PQSSample {
    /// Relative defect of the Beltrami modulus equation
    /// `(s + p)^2 = |mu|^2 ((s - p)^2 + 4 q^2)`.
    pub fn beltrami_residual(&self) -> f64 {
        let lhs = (self.s + self.p) * (self.s + self.p);
        let rhs = self.mu_abs * self.mu_abs
            * ((self.s - self.p) * (self.s - self.p) + 4.0 * self.q * self.q);
        (lhs - rhs).abs() / lhs.max(rhs).max(1.0)
    }

    /// Relative defect between `q^2 - p s` and `|f_z|^2 - |f_zbar|^2`.
    pub fn jacobian_residual(&self) -> f64 {
        let alt = self.fz.norm_sqr() - self.fzbar.norm_sqr();
        (self.jac - alt).abs() / self.jac.abs().max(1.0)
    }

    /// Relative defect of the Jacobian identity
    /// `J_f = (1 - |mu|^2) / (1 + |mu|^2) * (q^2 + (p^2 + s^2) / 2)`.
    pub fn identity_residual(&self) -> f64 {
        let m2 = self.mu_abs * self.mu_abs;
        let rhs = (1.0 - m2) / (1.0 + m2)
            * (self.q * self.q + 0.5 * (self.p * self.p + self.s * self.s));
        (self.jac - rhs).abs() / self.jac.abs().max(1.0)
    }
}

/// Sufficient condition for the weighted bound with weights `(t1, t2)`:
/// `t1 <= (1 - t2 - k^2) t2 / ((1 - t2) (1 - k^2))`.
///
/// The right-hand side is evaluated through [`t1_of`] so that the canonical
/// pair `(t1_of(k, t), t)` satisfies the condition with exact equality, ulp
/// for ulp. Out-of-range `t2` yields `false`.
pub fn discriminant_condition(k: f64, t1: f64, t2: f64) -> bool {
    matches!(t1_of(k, t2), Ok(bound) if t1 <= bound)
}

/// Outcome of a margin sweep of `J_f - t1 p^2 - t2 q^2` (normalized by
/// `p^2`) over the `(|mu|, varsigma)` grid.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MarginReport {
    pub min_margin: f64,
    /// `(|mu|, varsigma)` attaining the minimum.
    pub argmin: (f64, f64),
    pub samples: u64,
    /// Count of margins below `-1e-12`.
    pub violations: u64,
}

#[derive(Clone, Copy)]
struct RowSummary {
    min: f64,
    argmin: (f64, f64),
    samples: u64,
    violations: u64,
}

/// Sweep the margin for the weight pair induced by `t`, i.e.
/// `(t1(t), t)`. Grid: `n_mu` moduli on `[0, k]` times `n_sigma` directions
/// on `[0, 2 pi)`, skipping a band of half-width `1e-6` around the singular
/// direction `varsigma = arccos(|mu|)` and its mirror.
pub fn margin_sweep(k: f64, t: f64, n_mu: usize, n_sigma: usize) -> Result<MarginReport> {
    let t1 = t1_of(k, t)?;
    if t1 <= 0.0 {
        return Err(Error::SplitOutOfDomain { t, hi: 1.0 - k * k });
    }
    margin_sweep_weights(k, t1, t, n_mu, n_sigma)
}

/// Same sweep for an explicit weight pair. Exposed so that deliberately
/// corrupted weights can be driven through the identical code path.
pub fn margin_sweep_weights(
    k: f64,
    t1: f64,
    t2: f64,
    n_mu: usize,
    n_sigma: usize,
) -> Result<MarginReport> {
    if !k.is_finite() || !(0.0..1.0).contains(&k) {
        return Err(Error::KOutOfRange(k));
    }
    if n_mu < 32 || n_sigma < 32 {
        return Err(Error::BadGrid(format!(
            "margin sweep needs at least a 32x32 grid, got {n_mu}x{n_sigma}"
        )));
    }
    if !(t1.is_finite() && t2.is_finite() && t1 > 0.0 && t2 > 0.0) {
        return Err(Error::NonFinite("weights"));
    }

    let rows: Vec<RowSummary> = (0..n_mu)
        .into_par_iter()
        .map(|i| {
            let mu = k * i as f64 / (n_mu - 1) as f64;
            let mut angles: Vec<f64> = (0..n_sigma)
                .map(|j| std::f64::consts::TAU * j as f64 / n_sigma as f64)
                .collect();
            // The bound is tight at |mu| = k along the tangency direction of
            // the margin quadratic; probe it explicitly so the sweep sees the
            // near-zero margin instead of straddling it.
            if i == n_mu - 1 && t2 > t1 {
                let c_star = -t1 * k / (t2 - t1);
                if (-1.0..=1.0).contains(&c_star) {
                    let vs = c_star.acos();
                    angles.push(vs);
                    angles.push(std::f64::consts::TAU - vs);
                }
            }
            let mut row = RowSummary {
                min: f64::INFINITY,
                argmin: (mu, 0.0),
                samples: 0,
                violations: 0,
            };
            let sing = mu.acos();
            for &vs in &angles {
                if (vs - sing).abs() < 1e-6
                    || (vs - (std::f64::consts::TAU - sing)).abs() < 1e-6
                {
                    continue;
                }
                let c = vs.cos();
                if (c - mu).abs() <= 1e-12 {
                    continue;
                }
                let sn = vs.sin();
                let den = (mu - c) * (mu - c);
                let margin = ((1.0 - mu * mu) - t2 * sn * sn) / den - t1;
                row.samples += 1;
                if margin < row.min {
                    row.min = margin;
                    row.argmin = (mu, vs);
                }
                if margin < -1e-12 {
                    row.violations += 1;
                }
            }
            row
        })
        .collect();

    let mut out = MarginReport {
        min_margin: f64::INFINITY,
        argmin: (0.0, 0.0),
        samples: 0,
        violations: 0,
    };
    for row in rows {
        out.samples += row.samples;
        out.violations += row.violations;
        if row.min < out.min_margin {
            out.min_margin = row.min;
            out.argmin = row.argmin;
        }
    }
    Ok(out)
}

/// Gradient data of a constant-coefficient solution with Hessian entries
/// `u_xx = a`, `u_xy = b` and eigenvalue ratio `m = Lambda / lambda`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ConstantCoeffSample {
    pub fz: Complex64,
    /// Antiholomorphic derivative `(1 - m) a / 4`; real for gradient fields.
    pub fzbar: f64,
    pub mu_abs: f64,
    /// Sharp bound `(Lambda - lambda) / (Lambda + lambda)`.
    pub bound: f64,
}

/// Derivatives of the gradient of a solution to a constant-coefficient
/// equation with eigenvalues `lambda <= Lambda`: `f_z = ((1 + m) a - 2 i b)/4`
/// and `f_zbar = (1 - m) a / 4`. The Beltrami modulus never exceeds
/// `(Lambda - lambda) / (Lambda + lambda)`, with equality exactly at `b = 0`.
pub fn constant_coeff_gradient(
    big_lambda: f64,
    lambda: f64,
    a: f64,
    b: f64,
) -> Result<ConstantCoeffSample> {
    if !(lambda.is_finite() && big_lambda.is_finite() && lambda > 0.0 && big_lambda >= lambda) {
        return Err(Error::BadEigenvalues { lambda, big_lambda });
    }
    if a == 0.0 && b == 0.0 {
        return Err(Error::DegenerateHessian);
    }
    let m = big_lambda / lambda;
    let fz = Complex64::new(0.25 * (1.0 + m) * a, -0.5 * b);
    let fzbar = 0.25 * (1.0 - m) * a;
    Ok(ConstantCoeffSample {
        fz,
        fzbar,
        mu_abs: fzbar.abs() / fz.norm(),
        bound: (big_lambda - lambda) / (big_lambda + lambda),
    })
}

/// Worst residuals over a randomized pass through the polar parametrization.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IdentityReport {
    pub samples: u64,
    pub max_identity: f64,
    pub max_beltrami: f64,
    pub max_jacobian: f64,
}

impl Merge for IdentityReport {
    fn merge(self, other: Self) -> Self {
        IdentityReport {
            samples: self.samples + other.samples,
            max_identity: self.max_identity.max(other.max_identity),
            max_beltrami: self.max_beltrami.max(other.max_beltrami),
            max_jacobian: self.max_jacobian.max(other.max_jacobian),
        }
    }
}

/// Randomized identity check: `samples` draws with `|mu|` uniform on
/// `[0, mu_max]`, direction uniform on the circle, scale `p` log-uniform over
/// two decades. Directions inside the singular band are skipped.
pub fn identity_sweep(mu_max: f64, samples: u64, seed: u64) -> Result<IdentityReport> {
    if !mu_max.is_finite() || !(0.0..1.0).contains(&mu_max) {
        return Err(Error::KOutOfRange(mu_max));
    }
    let init = IdentityReport {
        samples: 0,
        max_identity: 0.0,
        max_beltrami: 0.0,
        max_jacobian: 0.0,
    };
    Ok(mc::run_chunked(seed, samples, init, |rng, len| {
        let mut acc = init;
        for _ in 0..len {
            let mu = rng.gen_range(0.0..=mu_max);
            let vs = rng.gen_range(0.0..std::f64::consts::TAU);
            let p = 10f64.powf(rng.gen_range(-2.0..=2.0));
            let Ok(sample) = pqs_from_polar(mu, vs, p) else {
                continue;
            };
            acc.samples += 1;
            acc.max_identity = acc.max_identity.max(sample.identity_residual());
            acc.max_beltrami = acc.max_beltrami.max(sample.beltrami_residual());
            acc.max_jacobian = acc.max_jacobian.max(sample.jacobian_residual());
        }
        acc
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polar_rejects_singular_direction() {
        // cos(0) = 1 never equals |mu| < 1, but |mu| close to cos is caught.
        let vs = 0.5f64;
        assert!(pqs_from_polar(vs.cos(), vs, 1.0).is_err());
    }

    #[test]
    fn margin_needs_a_real_grid() {
        assert!(margin_sweep(0.5, 0.6, 8, 256).is_err());
        assert!(margin_sweep(0.5, 0.6, 128, 8).is_err());
    }

    #[test]
    fn margin_rejects_bad_split() {
        // t beyond 1 - k^2 makes t1 nonpositive.
        assert!(margin_sweep(0.5, 0.8, 64, 64).is_err());
    }

    #[test]
    fn constant_coeff_rejects_zero_hessian() {
        assert!(constant_coeff_gradient(3.0, 1.0, 0.0, 0.0).is_err());
        assert!(constant_coeff_gradient(1.0, 3.0, 1.0, 0.0).is_err());
    }
}
