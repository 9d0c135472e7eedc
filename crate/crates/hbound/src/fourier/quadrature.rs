//! Disk-energy quadrature on polar grids.
//!
//! Circle integrals use the periodic trapezoid rule, which is exact for
//! trigonometric polynomials below the grid bandwidth. Radial accumulation
//! fits a power law to the circle integrals on each ladder interval and
//! integrates the fit in closed form, so any field whose angular energy is a
//! single radial power, in particular every corpus member, is integrated
//! exactly; non-power data falls back to the trapezoid.

use crate::error::{Error, Result};

use super::FieldSample;

/// `int J_f(r, theta) dtheta` at rung `ri`.
pub fn circle_jacobian_integral(field: &FieldSample, ri: usize) -> f64 {
    let row = &field.jac[ri];
    std::f64::consts::TAU * row.iter().sum::<f64>() / row.len() as f64
}

/// `J'(r) = r int J_f dtheta` at rung `ri`.
pub fn j_prime(field: &FieldSample, ri: usize) -> f64 {
    field.grid.radii[ri] * circle_jacobian_integral(field, ri)
}

/// Exponent of the power law through `(r_a, m_a)` and `(r_b, m_b)`, when one
/// exists.
fn power_fit(r_a: f64, m_a: f64, r_b: f64, m_b: f64) -> Option<f64> {
    if m_a <= 0.0 || m_b <= 0.0 {
        return None;
    }
    let g = (m_b / m_a).ln() / (r_b / r_a).ln();
    if g.is_finite() && g.abs() < 200.0 {
        Some(g)
    } else {
        None
    }
}

/// `int_(r_a)^(x) rho m(rho) drho` for the power-law model through the two
/// endpoints; trapezoid when the model does not apply.
fn segment(r_a: f64, m_a: f64, r_b: f64, m_b: f64, x: f64) -> f64 {
    match power_fit(r_a, m_a, r_b, m_b) {
        Some(g) if (g + 2.0).abs() < 1e-9 => m_a * r_a * r_a * (x / r_a).ln(),
        Some(g) => m_a * r_a * r_a * ((x / r_a).powf(g + 2.0) - 1.0) / (g + 2.0),
        None => {
            let m_x = if (r_b - r_a).abs() > 0.0 {
                m_a + (m_b - m_a) * (x - r_a) / (r_b - r_a)
            } else {
                m_a
            };
            0.5 * (x - r_a) * (r_a * m_a + x * m_x)
        }
    }
}

/// Disk contribution below the first rung, from the power model of the first
/// interval; falls back to a linear profile through the origin.
fn core(radii: &[f64], m: &[f64]) -> f64 {
    let (r0, m0) = (radii[0], m[0]);
    if radii.len() >= 2 {
        if let Some(g) = power_fit(r0, m0, radii[1], m[1]) {
            if g > -2.0 + 1e-9 {
                return m0 * r0 * r0 / (g + 2.0);
            }
        }
    }
    0.5 * m0 * r0 * r0
}

/// Cumulative disk energies `J(r_i)` at every rung.
pub fn cumulative_j(field: &FieldSample) -> Vec<f64> {
    let radii = &field.grid.radii;
    let m: Vec<f64> = (0..radii.len())
        .map(|ri| circle_jacobian_integral(field, ri))
        .collect();
    let mut j = Vec::with_capacity(radii.len());
    let mut acc = core(radii, &m);
    j.push(acc);
    for i in 1..radii.len() {
        acc += segment(radii[i - 1], m[i - 1], radii[i], m[i], radii[i]);
        j.push(acc);
    }
    j
}

/// `J(r) = int_(|z| < r) J_f`, for any `r` up to the top rung.
pub fn j_direct(field: &FieldSample, r: f64) -> Result<f64> {
    let radii = &field.grid.radii;
    let top = *radii.last().expect("grids are nonempty");
    if !(r > 0.0) || r > top * (1.0 + 1e-12) {
        return Err(Error::RadiusOutOfGrid { r, max: top });
    }
    let j = cumulative_j(field);
    let m: Vec<f64> = (0..radii.len())
        .map(|ri| circle_jacobian_integral(field, ri))
        .collect();
    if r <= radii[0] {
        // Scale the core contribution with the model of the first interval.
        let g = if radii.len() >= 2 {
            power_fit(radii[0], m[0], radii[1], m[1]).unwrap_or(0.0)
        } else {
            0.0
        };
        return Ok(j[0] * (r / radii[0]).powf(g + 2.0));
    }
    let i = radii.partition_point(|&x| x < r);
    if i >= radii.len() {
        return Ok(j[radii.len() - 1]);
    }
    if (radii[i] - r).abs() <= 1e-12 * r {
        return Ok(j[i]);
    }
    Ok(j[i - 1] + segment(radii[i - 1], m[i - 1], radii[i], m[i], r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{generator_by_name, PolarGrid};

    #[test]
    fn rejects_radii_outside_grid() {
        let grid = PolarGrid::geometric(0.5, 0.5, 4, 64).unwrap();
        let field = generator_by_name("identity").unwrap().generate(&grid);
        assert!(j_direct(&field, 0.9).is_err());
        assert!(j_direct(&field, -0.1).is_err());
        assert!(j_direct(&field, 0.5).is_ok());
    }

    #[test]
    fn constant_jacobian_is_exact() {
        let grid = PolarGrid::default_ladder();
        let field = generator_by_name("identity").unwrap().generate(&grid);
        for (ri, &r) in grid.radii.iter().enumerate() {
            let j = j_direct(&field, r).unwrap();
            let exact = std::f64::consts::PI * r * r;
            assert!((j - exact).abs() <= 1e-12 * exact, "rung {ri}");
        }
        // Between rungs and below the first rung.
        for r in [0.03, 0.1, 0.7321] {
            let j = j_direct(&field, r).unwrap();
            let exact = std::f64::consts::PI * r * r;
            assert!((j - exact).abs() <= 1e-12 * exact);
        }
    }

    #[test]
    fn j_prime_matches_circle_integral() {
        let grid = PolarGrid::default_ladder();
        let field = generator_by_name("identity").unwrap().generate(&grid);
        let jp = j_prime(&field, 10);
        let expected = 2.0 * std::f64::consts::PI * grid.radii[10];
        assert!((jp - expected).abs() < 1e-12);
    }
}
