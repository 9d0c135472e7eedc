//! Discrete counterpart of the weighted Jacobian bound, acting on pairs of
//! power-series coefficients.
//!
//! For each mode index `n >= 2` and coefficient pair `(d_plus, d_minus)` the
//! inequality bounds `C (|d_plus|^2 / (n - 1) - |d_minus|^2 / (n + 1))` by
//! the weighted combination
//! `t1 |d_plus + conj(d_minus)|^2 + t2 |d_plus - conj(d_minus)|^2`.
//! It holds exactly up to `C` twice the exponent of the weight pair, with the
//! `n = 2` case binding: there the reduced quadratic in `zeta =
//! conj(d_minus) / d_plus` has discriminant zero.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{t1_of, TSplit};
use crate::mc::{self, Merge};

/// One coefficient pair at mode index `n >= 2`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct CoeffPairSample {
    pub n: u32,
    pub d_plus: Complex64,
    pub d_minus: Complex64,
}

/// Left-hand side minus right-hand side for an explicit weight pair;
/// nonnegative exactly when the inequality holds for this sample.
pub fn coeff_inequality_weights(t1: f64, t2: f64, sample: &CoeffPairSample, c: f64) -> f64 {
    let sum = sample.d_plus + sample.d_minus.conj();
    let diff = sample.d_plus - sample.d_minus.conj();
    let lhs = t1 * sum.norm_sqr() + t2 * diff.norm_sqr();
    let rhs = c
        * (sample.d_plus.norm_sqr() / (sample.n as f64 - 1.0)
            - sample.d_minus.norm_sqr() / (sample.n as f64 + 1.0));
    lhs - rhs
}

/// Same combination for the weight pair `(t1(t), t)`.
pub fn discrete_coeff_inequality(k: f64, t: f64, sample: &CoeffPairSample, c: f64) -> Result<f64> {
    if sample.n < 2 {
        return Err(Error::BadGrid(format!("mode index must be >= 2, got {}", sample.n)));
    }
    let split = TSplit::new(k, t)?;
    Ok(coeff_inequality_weights(split.t1, split.t2, sample, c))
}

/// The inequality at `d_plus = 1`, `conj(d_minus) = zeta` with `zeta` real:
/// `(t1 + t2 + C/(n+1)) zeta^2 + 2 (t1 - t2) zeta + (t1 + t2 - C/(n-1))`.
pub fn reduced_quadratic(zeta: f64, n: u32, t1: f64, t2: f64, c: f64) -> f64 {
    let nf = n as f64;
    (t1 + t2 + c / (nf + 1.0)) * zeta * zeta + 2.0 * (t1 - t2) * zeta
        + (t1 + t2 - c / (nf - 1.0))
}

/// Minimizing real `zeta` of [`reduced_quadratic`] for given `n`.
pub fn reduced_quadratic_vertex(n: u32, t1: f64, t2: f64, c: f64) -> f64 {
    (t2 - t1) / (t1 + t2 + c / (n as f64 + 1.0))
}

/// Quarter-discriminant of the `n = 2` reduced quadratic; vanishes exactly at
/// `C` equal to twice the exponent of the pair. Equals
/// `(C^2 + 2 S C - 12 P) / 3` with `S = t1 + t2`, `P = t1 t2`.
pub fn n2_discriminant(t1: f64, t2: f64, c: f64) -> f64 {
    let s = t1 + t2;
    let p = t1 * t2;
    (c * c + 2.0 * s * c - 12.0 * p) / 3.0
}

/// Worst case seen over a randomized plus deterministic sweep at one `k`.
#[derive(Debug, Clone, Serialize)]
pub struct DiscreteReport {
    pub k: f64,
    pub c: f64,
    pub samples: u64,
    /// Count of normalized values below `-1e-12`.
    pub violations: u64,
    /// Smallest value of `(LHS - RHS) / max(1, LHS)`.
    pub min_value: f64,
    /// Configuration attaining the minimum, kept when it violates.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct Witness {
    pub n: u32,
    pub d_plus: (f64, f64),
    pub d_minus: (f64, f64),
    pub value: f64,
}

#[derive(Clone)]
struct SweepAcc {
    samples: u64,
    violations: u64,
    min_value: f64,
    argmin: Option<(u32, Complex64, Complex64)>,
}

impl Merge for SweepAcc {
    fn merge(self, other: Self) -> Self {
        let (min_value, argmin) = if other.min_value < self.min_value {
            (other.min_value, other.argmin)
        } else {
            (self.min_value, self.argmin)
        };
        SweepAcc {
            samples: self.samples + other.samples,
            violations: self.violations + other.violations,
            min_value,
            argmin,
        }
    }
}

/// Monte Carlo settings for [`discrete_sweep`].
#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub samples: u64,
    pub min_n: u32,
    pub max_n: u32,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            samples: 100_000,
            min_n: 2,
            max_n: 64,
            seed: mc::DEFAULT_SEED,
        }
    }
}

fn observe(acc: &mut SweepAcc, t1: f64, t2: f64, c: f64, sample: &CoeffPairSample) {
    let raw = coeff_inequality_weights(t1, t2, sample, c);
    let sum = sample.d_plus + sample.d_minus.conj();
    let diff = sample.d_plus - sample.d_minus.conj();
    let lhs = t1 * sum.norm_sqr() + t2 * diff.norm_sqr();
    let value = raw / lhs.max(1.0);
    acc.samples += 1;
    if value < acc.min_value {
        acc.min_value = value;
        acc.argmin = Some((sample.n, sample.d_plus, sample.d_minus));
    }
    if value < -1e-12 {
        acc.violations += 1;
    }
}

/// Randomized sweep of the inequality at constant `C` for the pair
/// `(t1(t), t)`, augmented with deterministic vertex probes at small mode
/// indices. The vertex probes make the binding `n = 2` direction part of
/// every run, so an inflated `C` is caught without relying on luck.
pub fn discrete_sweep(k: f64, t: f64, c: f64, cfg: &SweepConfig) -> Result<DiscreteReport> {
    let t1 = t1_of(k, t)?;
    if t1 <= 0.0 {
        return Err(Error::SplitOutOfDomain { t, hi: 1.0 - k * k });
    }
    if cfg.min_n < 2 || cfg.max_n < cfg.min_n {
        return Err(Error::BadGrid(format!(
            "mode range [{}, {}] is invalid",
            cfg.min_n, cfg.max_n
        )));
    }
    let t2 = t;
    let empty = SweepAcc {
        samples: 0,
        violations: 0,
        min_value: f64::INFINITY,
        argmin: None,
    };

    let mut acc = mc::run_chunked(cfg.seed, cfg.samples, empty.clone(), |rng, len| {
        let mut local = empty.clone();
        for _ in 0..len {
            let sample = CoeffPairSample {
                n: rng.gen_range(cfg.min_n..=cfg.max_n),
                d_plus: mc::unit_disk(rng),
                d_minus: mc::unit_disk(rng),
            };
            observe(&mut local, t1, t2, c, &sample);
        }
        local
    });

    for n in cfg.min_n..=cfg.max_n.min(cfg.min_n + 14) {
        let vertex = reduced_quadratic_vertex(n, t1, t2, c);
        for zeta in [vertex, -1.0, 0.0, 1.0] {
            let sample = CoeffPairSample {
                n,
                d_plus: Complex64::new(1.0, 0.0),
                d_minus: Complex64::new(zeta, 0.0),
            };
            observe(&mut acc, t1, t2, c, &sample);
        }
    }

    let witness = match acc.argmin {
        Some((n, dp, dm)) if acc.min_value < -1e-12 => Some(Witness {
            n,
            d_plus: (dp.re, dp.im),
            d_minus: (dm.re, dm.im),
            value: acc.min_value,
        }),
        _ => None,
    };
    Ok(DiscreteReport {
        k,
        c,
        samples: acc.samples,
        violations: acc.violations,
        min_value: acc.min_value,
        witness,
    })
}
