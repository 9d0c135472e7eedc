//! Energy-decay measurements and their comparison against the exponent
//! bounds.
//!
//! If `J(r)` is the Jacobian mass of the disk of radius `r`, a Holder
//! exponent `alpha` for the field shows up as the decay rate `J(r) ~
//! r^(2 alpha)`. Two estimators are used: the pointwise logarithmic ratio
//! `r J'(r) / (2 J(r))` minimized over interior rungs, and the least-squares
//! slope of `ln J` against `2 ln r` over the whole ladder.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::optimize;

use super::quadrature::{cumulative_j, j_prime};
use super::FieldSample;

/// One ladder rung of the energy table.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct JRow {
    pub r: f64,
    pub j: f64,
    pub j_prime: f64,
}

/// Measured energy decay of one field.
#[derive(Debug, Clone, Serialize)]
pub struct MorreyEstimate {
    pub j_table: Vec<JRow>,
    /// Minimum of `r J' / (2 J)` over interior rungs.
    pub alpha_ratio: f64,
    /// Least-squares slope of `ln J` against `2 ln r`.
    pub alpha_regression: f64,
    /// The ratio at every rung.
    pub per_radius: Vec<f64>,
}

/// Build the energy table and both decay estimators. Needs at least 16 rungs
/// and strictly positive energies.
pub fn morrey_estimate(field: &FieldSample) -> Result<MorreyEstimate> {
    let radii = &field.grid.radii;
    if radii.len() < 16 {
        return Err(Error::BadGrid(format!(
            "decay estimation needs at least 16 rungs, got {}",
            radii.len()
        )));
    }
    let j = cumulative_j(field);
    let mut j_table = Vec::with_capacity(radii.len());
    let mut per_radius = Vec::with_capacity(radii.len());
    for (ri, &r) in radii.iter().enumerate() {
        if !(j[ri] > 0.0) {
            return Err(Error::DegenerateEnergy(r));
        }
        let jp = j_prime(field, ri);
        j_table.push(JRow { r, j: j[ri], j_prime: jp });
        per_radius.push(r * jp / (2.0 * j[ri]));
    }
    let alpha_ratio = per_radius[1..per_radius.len() - 1]
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);

    let xs: Vec<f64> = radii.iter().map(|r| 2.0 * r.ln()).collect();
    let ys: Vec<f64> = j.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        num += (x - x_mean) * (y - y_mean);
        den += (x - x_mean) * (x - x_mean);
    }
    Ok(MorreyEstimate {
        j_table,
        alpha_ratio,
        alpha_regression: num / den,
        per_radius,
    })
}

/// Largest normalized violation of the ellipticity sandwich
/// `(1 - k'^2) |f_z|^2 <= J_f <= |f_z|^2` with
/// `k' = (Lambda - lambda) / (Lambda + lambda)`.
pub fn sandwich_check(field: &FieldSample, big_lambda: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && big_lambda >= lambda) {
        return Err(Error::BadEigenvalues { lambda, big_lambda });
    }
    let kp = (big_lambda - lambda) / (big_lambda + lambda);
    let floor = 1.0 - kp * kp;
    let mut worst: f64 = 0.0;
    for (row_z, row_j) in field.fz.iter().zip(&field.jac) {
        for (vz, &j) in row_z.iter().zip(row_j) {
            let e = vz.norm_sqr();
            let scale = e.max(1.0);
            worst = worst.max((floor * e - j) / scale);
            worst = worst.max((j - e) / scale);
        }
    }
    Ok(worst)
}

/// Predicted exponent from the measured distortion, next to the measured
/// decay.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundVsMeasured {
    /// Largest `|f_zbar| / |f_z|` over the grid.
    pub k_emp: f64,
    /// Optimal exponent bound at that distortion.
    pub alpha_bound: f64,
    /// Measured ratio estimator, capped at 1.
    pub alpha_measured: f64,
}

/// Compare the exponent bound at the empirical distortion against the
/// measured decay. Only meaningful for gradient fields; others are rejected,
/// since the bound genuinely fails for them.
pub fn bound_vs_measured(field: &FieldSample, tol: f64) -> Result<BoundVsMeasured> {
    if !field.meta.is_gradient {
        return Err(Error::NotGradient(field.meta.name.clone()));
    }
    let k_emp = field.empirical_distortion()?;
    let alpha_bound = optimize::alpha_star_or_limit(k_emp, tol)?.0;
    let estimate = morrey_estimate(field)?;
    Ok(BoundVsMeasured {
        k_emp,
        alpha_bound,
        alpha_measured: estimate.alpha_ratio.min(1.0),
    })
}
