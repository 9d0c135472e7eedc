//! Polar-grid fields, their angular Fourier data, and the energy estimates
//! built from them.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub mod generators;
pub mod morrey;
pub mod profile;
pub mod quadrature;

pub use generators::{corpus, generator_by_name, gradient_partner, FieldGenerator};
pub use morrey::{bound_vs_measured, morrey_estimate, sandwich_check, BoundVsMeasured, MorreyEstimate};
pub use profile::{
    coefficient_relation_check, fourier_profile, j_from_fourier, parseval_checks, radial_derivs,
    FourierProfile, RadialDerivs,
};
pub use quadrature::{circle_jacobian_integral, cumulative_j, j_direct, j_prime};

/// Concentric sampling circles plus a uniform angular grid.
///
/// Radii are strictly increasing inside `(0, 1]`; the angular count is a
/// power of two no smaller than 64 so that mode extraction up to useful
/// orders stays alias-free.
#[derive(Debug, Clone, Serialize)]
pub struct PolarGrid {
    pub radii: Vec<f64>,
    pub n_theta: usize,
}

impl PolarGrid {
    pub fn new(radii: Vec<f64>, n_theta: usize) -> Result<Self> {
        if !n_theta.is_power_of_two() || n_theta < 64 {
            return Err(Error::BadGrid(format!(
                "n_theta must be a power of two >= 64, got {n_theta}"
            )));
        }
        if radii.is_empty() {
            return Err(Error::BadGrid("no radii".into()));
        }
        for pair in radii.windows(2) {
            if !(pair[0] < pair[1]) {
                return Err(Error::BadGrid("radii must be strictly increasing".into()));
            }
        }
        let (first, last) = (radii[0], *radii.last().unwrap());
        if !(first > 0.0 && last <= 1.0) {
            return Err(Error::BadGrid("radii must lie in (0, 1]".into()));
        }
        Ok(PolarGrid { radii, n_theta })
    }

    /// Geometric ladder of `rungs` circles from `r_max` downward with ratio
    /// `ratio < 1`.
    pub fn geometric(r_max: f64, ratio: f64, rungs: usize, n_theta: usize) -> Result<Self> {
        if !(ratio > 0.0 && ratio < 1.0) || rungs < 2 {
            return Err(Error::BadGrid("need 0 < ratio < 1 and at least 2 rungs".into()));
        }
        let mut radii: Vec<f64> = (0..rungs)
            .map(|j| r_max * ratio.powi((rungs - 1 - j) as i32))
            .collect();
        // Guard against rounding pushing the top rung past r_max.
        radii[rungs - 1] = r_max;
        PolarGrid::new(radii, n_theta)
    }

    /// Default ladder: 33 circles from `r = 1` down by a factor of
    /// `2^(-1/8)` per rung (so `r_min = 1/16`), 256 angles.
    pub fn default_ladder() -> Self {
        PolarGrid::geometric(1.0, 0.5f64.powf(0.125), 33, 256)
            .expect("the built-in ladder is valid")
    }

    pub fn theta(&self, j: usize) -> f64 {
        std::f64::consts::TAU * j as f64 / self.n_theta as f64
    }
}

/// One term `coeff * r^power * e^(i n theta)` of a field with a finite
/// angular expansion whose radial profile is a single power.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct AnalyticMode {
    pub n: i64,
    pub coeff: Complex64,
    pub power: f64,
}

/// Provenance of a sampled field.
#[derive(Debug, Clone, Serialize)]
pub struct FieldMeta {
    pub name: String,
    /// Whether the field is the gradient of a real potential, i.e. whether
    /// `f_zbar` is real everywhere.
    pub is_gradient: bool,
    /// Exact mode list when the field has one; enables closed-form radial
    /// derivatives and round-trip checks.
    pub modes: Option<Vec<AnalyticMode>>,
    /// `(Lambda, lambda)` when the field solves a divergence-form equation
    /// with known eigenvalue bounds.
    pub elliptic: Option<(f64, f64)>,
}

/// A field sampled on a polar grid, with both derivatives and the Jacobian.
/// Index order is `[radius][theta]`.
#[derive(Debug, Clone)]
pub struct FieldSample {
    pub grid: PolarGrid,
    pub f: Vec<Vec<Complex64>>,
    pub fz: Vec<Vec<Complex64>>,
    pub fzbar: Vec<Vec<Complex64>>,
    pub jac: Vec<Vec<f64>>,
    pub meta: FieldMeta,
}

impl FieldSample {
    /// Evaluate a mode list exactly on a grid. Derivatives of the monomial
    /// `r^b e^(i n theta)` split into the holomorphic part
    /// `(b + n)/2 * r^(b-1) e^(i (n-1) theta)` and the antiholomorphic part
    /// `(b - n)/2 * r^(b-1) e^(i (n+1) theta)`.
    pub fn from_modes(grid: PolarGrid, modes: Vec<AnalyticMode>, meta: FieldMeta) -> Self {
        let nt = grid.n_theta;
        let mut f = vec![vec![Complex64::default(); nt]; grid.radii.len()];
        let mut fz = f.clone();
        let mut fzbar = f.clone();
        let mut jac = vec![vec![0.0; nt]; grid.radii.len()];
        for (ri, &r) in grid.radii.iter().enumerate() {
            for j in 0..nt {
                let theta = grid.theta(j);
                let mut vf = Complex64::default();
                let mut vz = Complex64::default();
                let mut vzb = Complex64::default();
                for m in &modes {
                    let radial = r.powf(m.power);
                    let dradial = r.powf(m.power - 1.0);
                    let phase = Complex64::from_polar(1.0, m.n as f64 * theta);
                    vf += m.coeff * radial * phase;
                    let down = Complex64::from_polar(1.0, (m.n as f64 - 1.0) * theta);
                    let up = Complex64::from_polar(1.0, (m.n as f64 + 1.0) * theta);
                    vz += m.coeff * 0.5 * (m.power + m.n as f64) * dradial * down;
                    vzb += m.coeff * 0.5 * (m.power - m.n as f64) * dradial * up;
                }
                f[ri][j] = vf;
                fz[ri][j] = vz;
                fzbar[ri][j] = vzb;
                jac[ri][j] = vz.norm_sqr() - vzb.norm_sqr();
            }
        }
        FieldSample {
            grid,
            f,
            fz,
            fzbar,
            jac,
            meta: FieldMeta {
                modes: Some(modes),
                ..meta
            },
        }
    }

    /// Largest `|f_zbar| / |f_z|` over the grid; errors when some node has
    /// `|f_z|` at rounding level while `|f_zbar|` is not, or when the ratio
    /// reaches 1.
    pub fn empirical_distortion(&self) -> Result<f64> {
        let mut k_emp: f64 = 0.0;
        for (row_z, row_zb) in self.fz.iter().zip(&self.fzbar) {
            for (vz, vzb) in row_z.iter().zip(row_zb) {
                let nz = vz.norm();
                let nzb = vzb.norm();
                if nzb == 0.0 {
                    continue;
                }
                if nz <= 1e-14 * nzb.max(1.0) {
                    return Err(Error::DistortionDegenerate(f64::INFINITY));
                }
                k_emp = k_emp.max(nzb / nz);
            }
        }
        if k_emp >= 1.0 {
            return Err(Error::DistortionDegenerate(k_emp));
        }
        Ok(k_emp)
    }

    /// Largest `|Im f_zbar|` relative to the field scale; zero for gradients.
    pub fn fzbar_imag_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.fzbar {
            for v in row {
                worst = worst.max(v.im.abs() / v.norm().max(1.0));
            }
        }
        worst
    }
}
