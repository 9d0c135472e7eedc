//! Angular Fourier data of a sampled field and the exact identities tying it
//! to the derivatives.
//!
//! With `f(r, theta) = sum_n c_n(r) e^(i n theta)` the two derivative
//! combinations have expansions
//! `f_zbar + e^(2 i theta) f_z = sum_n c_n'(r) e^(i (n+1) theta)` and
//! `f_zbar - e^(2 i theta) f_z = -sum_n (n / r) c_n(r) e^(i (n+1) theta)`.
//! Writing `d_n = n c_n`, the circle integrals of the real and imaginary
//! parts of the second combination collapse to coefficient sums, and
//! conjugating the first combination yields a relation between `c_n'` and
//! `c_(-n-2)'` that holds exactly for gradient fields and fails by an order
//! one amount otherwise.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

use super::FieldSample;

/// Angular Fourier coefficients `c_n(r)` for `|n| <= order`, per radius.
#[derive(Debug, Clone, Serialize)]
pub struct FourierProfile {
    pub radii: Vec<f64>,
    pub order: usize,
    /// `c[radius_index][order + n]`.
    pub c: Vec<Vec<Complex64>>,
}

impl FourierProfile {
    pub fn c_at(&self, ri: usize, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.order {
            return Complex64::default();
        }
        self.c[ri][(n + self.order as i64) as usize]
    }

    /// `d_n = n c_n`.
    pub fn d_at(&self, ri: usize, n: i64) -> Complex64 {
        self.c_at(ri, n) * n as f64
    }

    pub fn radius_index(&self, r: f64) -> Result<usize> {
        self.radii
            .iter()
            .position(|&x| (x - r).abs() <= 1e-12 * r.max(1.0))
            .ok_or(Error::RadiusOutOfGrid {
                r,
                max: *self.radii.last().unwrap_or(&0.0),
            })
    }
}

/// Discrete Fourier transform of the sampled field, one circle at a time.
///
/// Requires `n_theta >= 2 order + 2` so no retained mode aliases another.
pub fn fourier_profile(field: &FieldSample, order: usize) -> Result<FourierProfile> {
    let nt = field.grid.n_theta;
    if nt < 2 * order + 2 {
        return Err(Error::Aliasing {
            order,
            need: 2 * order + 2,
            got: nt,
        });
    }
    let mut c = Vec::with_capacity(field.grid.radii.len());
    for row in &field.f {
        let mut per_radius = vec![Complex64::default(); 2 * order + 1];
        for (slot, value) in per_radius.iter_mut().enumerate() {
            let n = slot as i64 - order as i64;
            let mut acc = Complex64::default();
            for (j, fv) in row.iter().enumerate() {
                let theta = std::f64::consts::TAU * j as f64 / nt as f64;
                acc += fv * Complex64::from_polar(1.0, -(n as f64) * theta);
            }
            *value = acc / nt as f64;
        }
        c.push(per_radius);
    }
    Ok(FourierProfile {
        radii: field.grid.radii.clone(),
        order,
        c,
    })
}

/// Energy of the disk of radius `r` from coefficients alone:
/// `J(r) = pi sum_n n |c_n(r)|^2`.
pub fn j_from_fourier(profile: &FourierProfile, r: f64) -> Result<f64> {
    let ri = profile.radius_index(r)?;
    let mut j = 0.0;
    for n in -(profile.order as i64)..=profile.order as i64 {
        j += n as f64 * profile.c_at(ri, n).norm_sqr();
    }
    Ok(std::f64::consts::PI * j)
}

/// Radial derivatives `c_n'(r)` on the same index layout as a profile.
#[derive(Debug, Clone)]
pub struct RadialDerivs {
    pub order: usize,
    pub c_prime: Vec<Vec<Complex64>>,
}

impl RadialDerivs {
    pub fn at(&self, ri: usize, n: i64) -> Complex64 {
        if n.unsigned_abs() as usize > self.order {
            return Complex64::default();
        }
        self.c_prime[ri][(n + self.order as i64) as usize]
    }
}

/// Exact derivatives when the field carries its mode list, otherwise finite
/// differences on the coefficient table (fourth order on log-uniform
/// ladders, second order otherwise).
pub fn radial_derivs(field: &FieldSample, profile: &FourierProfile) -> RadialDerivs {
    if let Some(modes) = &field.meta.modes {
        let mut c_prime = vec![vec![Complex64::default(); 2 * profile.order + 1]; profile.radii.len()];
        for m in modes {
            if m.n.unsigned_abs() as usize > profile.order {
                continue;
            }
            let slot = (m.n + profile.order as i64) as usize;
            for (ri, &r) in profile.radii.iter().enumerate() {
                c_prime[ri][slot] += m.coeff * m.power * r.powf(m.power - 1.0);
            }
        }
        return RadialDerivs {
            order: profile.order,
            c_prime,
        };
    }
    fd_derivs(profile)
}

fn is_log_uniform(radii: &[f64]) -> bool {
    if radii.len() < 3 {
        return false;
    }
    let h0 = (radii[1] / radii[0]).ln();
    radii
        .windows(2)
        .all(|w| ((w[1] / w[0]).ln() - h0).abs() <= 1e-9 * h0.abs())
}

fn fd_derivs(profile: &FourierProfile) -> RadialDerivs {
    let radii = &profile.radii;
    let nr = radii.len();
    let width = 2 * profile.order + 1;
    let mut c_prime = vec![vec![Complex64::default(); width]; nr];
    let log_uniform = is_log_uniform(radii) && nr >= 5;
    for slot in 0..width {
        let col: Vec<Complex64> = (0..nr).map(|ri| profile.c[ri][slot]).collect();
        if log_uniform {
            // Differentiate in u = ln r, then divide by r.
            let h = (radii[1] / radii[0]).ln();
            for ri in 0..nr {
                let du = if ri >= 2 && ri + 2 < nr {
                    (col[ri - 2] - col[ri - 1] * 8.0 + col[ri + 1] * 8.0 - col[ri + 2])
                        / (12.0 * h)
                } else if ri == 0 {
                    (col[0] * -25.0 + col[1] * 48.0 - col[2] * 36.0 + col[3] * 16.0
                        - col[4] * 3.0)
                        / (12.0 * h)
                } else if ri == 1 {
                    (col[0] * -3.0 - col[1] * 10.0 + col[2] * 18.0 - col[3] * 6.0 + col[4])
                        / (12.0 * h)
                } else if ri == nr - 2 {
                    (col[nr - 1] * 3.0 + col[nr - 2] * 10.0 - col[nr - 3] * 18.0
                        + col[nr - 4] * 6.0
                        - col[nr - 5])
                        / (12.0 * h)
                } else {
                    (col[nr - 1] * 25.0 - col[nr - 2] * 48.0 + col[nr - 3] * 36.0
                        - col[nr - 4] * 16.0
                        + col[nr - 5] * 3.0)
                        / (12.0 * h)
                };
                c_prime[ri][slot] = du / radii[ri];
            }
        } else {
            for ri in 0..nr {
                let (a, b, c) = if ri == 0 {
                    (0, 1, 2)
                } else if ri == nr - 1 {
                    (nr - 3, nr - 2, nr - 1)
                } else {
                    (ri - 1, ri, ri + 1)
                };
                // Second-order three-point rule on an arbitrary triple.
                let (xa, xb, xc) = (radii[a], radii[b], radii[c]);
                let x = radii[ri];
                let wa = (2.0 * x - xb - xc) / ((xa - xb) * (xa - xc));
                let wb = (2.0 * x - xa - xc) / ((xb - xa) * (xb - xc));
                let wc = (2.0 * x - xa - xb) / ((xc - xa) * (xc - xb));
                c_prime[ri][slot] = col[a] * wa + col[b] * wb + col[c] * wc;
            }
        }
    }
    RadialDerivs {
        order: profile.order,
        c_prime,
    }
}

/// Residuals of the three Parseval-type identities at one radius, all
/// relative to `max(1, lhs)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParsevalReport {
    pub r: f64,
    /// Circle integral of `p^2` against the `d`-coefficient sum.
    pub p_residual: f64,
    /// Circle integral of `q^2` against the mirrored `d`-coefficient sum.
    pub q_residual: f64,
    /// Symmetrized energy identity combining both derivative expansions.
    pub energy_residual: f64,
}

/// Evaluate the three identities at radius index `ri`.
pub fn parseval_checks(
    field: &FieldSample,
    profile: &FourierProfile,
    derivs: &RadialDerivs,
    ri: usize,
) -> Result<ParsevalReport> {
    if ri >= profile.radii.len() {
        return Err(Error::RadiusOutOfGrid {
            r: f64::NAN,
            max: *profile.radii.last().unwrap_or(&0.0),
        });
    }
    let r = profile.radii[ri];
    let nt = field.grid.n_theta;
    let weight = std::f64::consts::TAU / nt as f64;

    let (mut lhs_p, mut lhs_q, mut lhs_e) = (0.0, 0.0, 0.0);
    for j in 0..nt {
        let theta = field.grid.theta(j);
        let twist = Complex64::from_polar(1.0, 2.0 * theta);
        let w1 = field.fzbar[ri][j] + twist * field.fz[ri][j];
        let w2 = field.fzbar[ri][j] - twist * field.fz[ri][j];
        let (p, qp) = (w2.re, w2.im);
        let (s, qs) = (w1.re, -w1.im);
        lhs_p += p * p;
        lhs_q += qp * qp;
        lhs_e += 0.5 * (p * p + s * s) + 0.5 * (qp * qp + qs * qs);
    }
    lhs_p *= weight;
    lhs_q *= weight;
    lhs_e *= weight;

    let n_max = profile.order as i64;
    let (mut sum_plus, mut sum_minus) = (0.0, 0.0);
    for j in -(n_max + 1)..=(n_max + 1) {
        let a = profile.d_at(ri, j - 1);
        let b = profile.d_at(ri, -j - 1).conj();
        sum_plus += (a + b).norm_sqr();
        sum_minus += (a - b).norm_sqr();
    }
    let pref = std::f64::consts::PI / (2.0 * r * r);
    let rhs_p = pref * sum_plus;
    let rhs_q = pref * sum_minus;

    let mut rhs_e = 0.0;
    for n in -n_max..=n_max {
        let nf = n as f64;
        rhs_e += (nf / r).powi(2) * profile.c_at(ri, n).norm_sqr();
        rhs_e += derivs.at(ri, n).norm_sqr();
    }
    rhs_e *= std::f64::consts::PI;

    Ok(ParsevalReport {
        r,
        p_residual: (lhs_p - rhs_p).abs() / lhs_p.max(1.0),
        q_residual: (lhs_q - rhs_q).abs() / lhs_q.max(1.0),
        energy_residual: (lhs_e - rhs_e).abs() / lhs_e.max(1.0),
    })
}

/// Worst defect of the conjugate-pair derivative relation
/// `c'_(-n-2) - conj(c'_n) = ((-n-2)/r) c_(-n-2) - (n/r) conj(c_n)`
/// over all radii and `n >= -1`. Near zero for gradient fields, order one
/// otherwise; `n = -1` degenerates to the imaginary-part relation at index
/// `-1` and is included.
pub fn coefficient_relation_check(profile: &FourierProfile, derivs: &RadialDerivs) -> f64 {
    let mut worst: f64 = 0.0;
    let n_max = profile.order as i64;
    for ri in 0..profile.radii.len() {
        let r = profile.radii[ri];
        for n in -1..=(n_max - 2) {
            let m = -n - 2;
            let lhs = derivs.at(ri, m) - derivs.at(ri, n).conj();
            let rhs = profile.c_at(ri, m) * (m as f64 / r)
                - profile.c_at(ri, n).conj() * (n as f64 / r);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst
}
