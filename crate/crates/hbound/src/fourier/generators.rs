//! The built-in field corpus.
//!
//! Two families cover the cases of interest. Radial-power fields are finite
//! angular mode sums with one common radial power; choosing coefficients in
//! conjugate pairs makes `f_zbar` real (a gradient field), twisting one
//! partner breaks that structure on purpose. Scaled harmonic gradients come
//! from powers of a sheared coordinate and solve a constant-coefficient
//! divergence-form equation with prescribed eigenvalue bounds. The radial
//! stretch with distortion `K` is the classical sharpness example: it is
//! K-quasiregular, decays exactly like `r^(1/K)` in energy, and is not a
//! gradient field.

use num_complex::Complex64;
use std::collections::BTreeMap;

use super::{AnalyticMode, FieldMeta, FieldSample, PolarGrid};

/// A named way of producing a sampled field on any grid.
pub trait FieldGenerator: Send + Sync {
    fn name(&self) -> &str;
    /// Whether the produced field has real `f_zbar` everywhere.
    fn is_gradient(&self) -> bool;
    fn generate(&self, grid: &PolarGrid) -> FieldSample;
}

/// Gradient pairing rule for a common radial power `b`: the partner of the
/// coefficient at angular index `n` sits at `-n - 2` and equals
/// `conj((b - n) a_n) / (b + n + 2)`.
pub fn gradient_partner(power: f64, n: i64, coeff: Complex64) -> (i64, Complex64) {
    (-n - 2, (coeff * (power - n as f64)).conj() / (power + n as f64 + 2.0))
}

fn modes_make_gradient(modes: &[(i64, Complex64)], power: f64) -> bool {
    // Collect the angular coefficients of f_zbar and demand conjugate
    // symmetry, which is exactly reality of the sum.
    let mut bar: BTreeMap<i64, Complex64> = BTreeMap::new();
    let mut scale: f64 = 0.0;
    for &(n, a) in modes {
        let c = a * 0.5 * (power - n as f64);
        *bar.entry(n + 1).or_default() += c;
        scale = scale.max(c.norm());
    }
    if scale == 0.0 {
        return true;
    }
    let keys: Vec<i64> = bar.keys().copied().collect();
    keys.iter().all(|&idx| {
        let here = bar.get(&idx).copied().unwrap_or_default();
        let mirror = bar.get(&(-idx)).copied().unwrap_or_default();
        (here - mirror.conj()).norm() <= 1e-12 * scale
    })
}

/// Finite angular mode sum with one common radial power.
pub struct RadialPowerField {
    name: String,
    power: f64,
    modes: Vec<(i64, Complex64)>,
}

impl RadialPowerField {
    pub fn new(name: &str, power: f64, modes: Vec<(i64, Complex64)>) -> Self {
        RadialPowerField {
            name: name.to_string(),
            power,
            modes,
        }
    }
}

impl FieldGenerator for RadialPowerField {
    fn name(&self) -> &str {
        &self.name
    }

    fn is_gradient(&self) -> bool {
        modes_make_gradient(&self.modes, self.power)
    }

    fn generate(&self, grid: &PolarGrid) -> FieldSample {
        let modes = self
            .modes
            .iter()
            .map(|&(n, coeff)| AnalyticMode {
                n,
                coeff,
                power: self.power,
            })
            .collect();
        FieldSample::from_modes(
            grid.clone(),
            modes,
            FieldMeta {
                name: self.name.clone(),
                is_gradient: self.is_gradient(),
                modes: None,
                elliptic: None,
            },
        )
    }
}

/// Gradient of the real part of the `m`-th power of the sheared coordinate
/// `w = A z + B conj(z)`, with `A, B` chosen from eigenvalue bounds
/// `lambda <= Lambda`. Solves the constant-coefficient equation with those
/// bounds; its Beltrami modulus attains `(Lambda - lambda) / (Lambda +
/// lambda)` on the real axis.
pub struct ScaledHarmonicGradient {
    name: String,
    big_lambda: f64,
    lambda: f64,
    m: u32,
}

impl ScaledHarmonicGradient {
    pub fn new(name: &str, big_lambda: f64, lambda: f64, m: u32) -> Self {
        assert!(lambda > 0.0 && big_lambda >= lambda && m >= 2);
        ScaledHarmonicGradient {
            name: name.to_string(),
            big_lambda,
            lambda,
            m,
        }
    }

    fn modes(&self) -> Vec<(i64, Complex64)> {
        let a = 0.5 * (1.0 / self.big_lambda.sqrt() + 1.0 / self.lambda.sqrt());
        let b = 0.5 * (1.0 / self.big_lambda.sqrt() - 1.0 / self.lambda.sqrt());
        let deg = (self.m - 1) as i64;
        // (A e^(i t) + B e^(-i t))^deg expanded over binomials, then the
        // conjugate copy weighted by B instead of A.
        let mut acc: BTreeMap<i64, f64> = BTreeMap::new();
        let mut binom = 1.0f64;
        for j in 0..=deg {
            if j > 0 {
                binom *= (deg - j + 1) as f64 / j as f64;
            }
            let weight = binom * a.powi(j as i32) * b.powi((deg - j) as i32);
            let n = 2 * j - deg;
            *acc.entry(n).or_default() += 0.5 * self.m as f64 * a * weight;
            *acc.entry(-n).or_default() += 0.5 * self.m as f64 * b * weight;
        }
        acc.into_iter()
            .map(|(n, c)| (n, Complex64::new(c, 0.0)))
            .collect()
    }
}

impl FieldGenerator for ScaledHarmonicGradient {
    fn name(&self) -> &str {
        &self.name
    }

    fn is_gradient(&self) -> bool {
        true
    }

    fn generate(&self, grid: &PolarGrid) -> FieldSample {
        let power = (self.m - 1) as f64;
        let modes = self
            .modes()
            .into_iter()
            .map(|(n, coeff)| AnalyticMode { n, coeff, power })
            .collect();
        FieldSample::from_modes(
            grid.clone(),
            modes,
            FieldMeta {
                name: self.name.clone(),
                is_gradient: true,
                modes: None,
                elliptic: Some((self.big_lambda, self.lambda)),
            },
        )
    }
}

/// The corpus used by the verification drivers, in a fixed order.
pub fn corpus() -> Vec<Box<dyn FieldGenerator>> {
    let a3 = Complex64::new(0.1, 0.05);
    let a3_partner = gradient_partner(1.0, 3, a3).1;
    let b1 = Complex64::new(0.8, 0.6);
    let b1_partner = gradient_partner(2.0, 1, b1).1;
    vec![
        Box::new(RadialPowerField::new(
            "identity",
            1.0,
            vec![(1, Complex64::new(1.0, 0.0))],
        )),
        Box::new(RadialPowerField::new(
            "stretch-k3",
            1.0 / 3.0,
            vec![(1, Complex64::new(1.0, 0.0))],
        )),
        Box::new(ScaledHarmonicGradient::new("harm-iso-m2", 1.0, 1.0, 2)),
        Box::new(ScaledHarmonicGradient::new("harm-m2", 3.0, 1.0, 2)),
        Box::new(ScaledHarmonicGradient::new("harm-m3", 3.0, 1.0, 3)),
        Box::new(ScaledHarmonicGradient::new("harm-m5", 3.0, 1.0, 5)),
        Box::new(RadialPowerField::new(
            "trig-grad-a",
            1.0,
            vec![(1, Complex64::new(1.0, 0.0)), (3, a3), (-5, a3_partner)],
        )),
        Box::new(RadialPowerField::new(
            "trig-grad-b",
            2.0,
            vec![(1, b1), (-3, b1_partner)],
        )),
        Box::new(RadialPowerField::new(
            "twisted-probe",
            2.0,
            vec![(1, b1), (-3, b1_partner * Complex64::i())],
        )),
    ]
}

/// Look up one corpus member by name.
pub fn generator_by_name(name: &str) -> Option<Box<dyn FieldGenerator>> {
    corpus().into_iter().find(|g| g.name() == name)
}
