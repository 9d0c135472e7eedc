//! Named exponent methods behind one trait, registered in the fixed order
//! used by every report and table.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::exponent::{self, DistortionParams};
use crate::optimize;

/// A named lower bound for the Holder exponent of a K-quasiregular gradient
/// mapping.
pub trait ExponentMethod: Send + Sync {
    /// Stable identifier, also used as a column name.
    fn name(&self) -> &'static str;
    /// Exponent at the given distortion. `tol` is forwarded to iterative
    /// methods and ignored by closed forms.
    fn exponent(&self, params: &DistortionParams, tol: f64) -> Result<f64>;
}

struct Classical;
struct BaernsteinKovalev;
struct ExplicitT0;
struct SymmetricSplit;
struct Optimal;

impl ExponentMethod for Classical {
    fn name(&self) -> &'static str {
        "alpha_classical"
    }
    fn exponent(&self, params: &DistortionParams, _tol: f64) -> Result<f64> {
        Ok(exponent::alpha_classical(params))
    }
}

impl ExponentMethod for BaernsteinKovalev {
    fn name(&self) -> &'static str {
        "alpha1"
    }
    fn exponent(&self, params: &DistortionParams, _tol: f64) -> Result<f64> {
        Ok(exponent::alpha1(params))
    }
}

impl ExponentMethod for ExplicitT0 {
    fn name(&self) -> &'static str {
        "alpha0"
    }
    fn exponent(&self, params: &DistortionParams, _tol: f64) -> Result<f64> {
        Ok(exponent::alpha0(params))
    }
}

impl ExponentMethod for SymmetricSplit {
    fn name(&self) -> &'static str {
        "alpha2"
    }
    fn exponent(&self, params: &DistortionParams, _tol: f64) -> Result<f64> {
        Ok(exponent::alpha2(params))
    }
}

impl ExponentMethod for Optimal {
    fn name(&self) -> &'static str {
        "alpha_star"
    }
    fn exponent(&self, params: &DistortionParams, tol: f64) -> Result<f64> {
        Ok(optimize::alpha_star_or_limit(params.k, tol)?.0)
    }
}

static METHODS: [&dyn ExponentMethod; 5] =
    [&Classical, &BaernsteinKovalev, &ExplicitT0, &SymmetricSplit, &Optimal];

/// The registry, in report column order.
pub fn methods() -> &'static [&'static dyn ExponentMethod] {
    &METHODS
}

/// Look up a single method by its column name.
pub fn method_by_name(name: &str) -> Option<&'static dyn ExponentMethod> {
    METHODS.iter().copied().find(|m| m.name() == name)
}

/// All exponents for one distortion value, plus the maximizer location.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExponentReport {
    pub k: f64,
    pub alpha_classical: f64,
    pub alpha1: f64,
    pub alpha0: f64,
    pub alpha2: f64,
    pub alpha_star: f64,
    pub t_star: f64,
}

impl ExponentReport {
    /// Strict ordering chain expected of every report with `0 < k < 1`:
    /// `alpha_star > alpha0 > alpha1 > alpha_classical`.
    pub fn ordering_holds(&self) -> bool {
        self.alpha_star > self.alpha0
            && self.alpha0 > self.alpha1
            && self.alpha1 > self.alpha_classical
    }
}

/// Run every registered method at one distortion value.
///
/// At `k = 0` all bounds except `alpha2` equal 1 and the maximizer location
/// degenerates to `t = 1`.
pub fn exponent_report(params: &DistortionParams, tol: f64) -> Result<ExponentReport> {
    let (alpha_star, t_star) = optimize::alpha_star_or_limit(params.k, tol)?;
    Ok(ExponentReport {
        k: params.k,
        alpha_classical: exponent::alpha_classical(params),
        alpha1: exponent::alpha1(params),
        alpha0: exponent::alpha0(params),
        alpha2: exponent::alpha2(params),
        alpha_star,
        t_star,
    })
}

/// Reports over the interior lattice `k_i = i / (grid + 1)`, `i = 1..=grid`.
pub fn sweep_reports(grid: u32, tol: f64) -> Result<Vec<ExponentReport>> {
    (1..=grid)
        .into_par_iter()
        .map(|i| {
            let k = i as f64 / (grid + 1) as f64;
            exponent_report(&exponent::distortion_from_k(k)?, tol)
        })
        .collect()
}
