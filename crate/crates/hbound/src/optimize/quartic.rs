//! The quartic whose interval root locates the maximizer of `alpha(t)`.
//!
//! Clearing denominators in the stationarity condition turns it into a
//! polynomial identity: the stationarity numerator times
//! `(1 - k^2)^3 (1 - t)^5` equals `t^2 (1 - t) N_k(t)` with `N_k` the quartic
//! below. Roots of `N_k` inside `(1 - k, 1 - k^2)` therefore contain every
//! critical point of `alpha`; the quartic may also carry spurious interval
//! roots from the squared branch of the radical, which is why callers compare
//! against the optimizer location instead of trusting the root list alone.

use serde::Serialize;

use crate::optimize::t_window;

/// Coefficients of `N_k(t) = c4 t^4 + c3 t^3 + c2 t^2 + c1 t + c0`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct QuarticNk {
    pub k: f64,
    pub c4: f64,
    pub c3: f64,
    pub c2: f64,
    pub c1: f64,
    pub c0: f64,
}

impl QuarticNk {
    /// Largest coefficient magnitude, used to normalize residuals.
    pub fn inf_norm(&self) -> f64 {
        self.c4
            .abs()
            .max(self.c3.abs())
            .max(self.c2.abs())
            .max(self.c1.abs())
            .max(self.c0.abs())
    }
}

/// Coefficients of `N_k` as polynomials in `k^2`.
pub fn quartic_coeffs(k: f64) -> QuarticNk {
    let k2 = k * k;
    let k4 = k2 * k2;
    let k6 = k4 * k2;
    let omk2 = 1.0 - k2;
    QuarticNk {
        k,
        c4: 16.0 - 16.0 * k2 + k4,
        c3: -(64.0 - 80.0 * k2 + 18.0 * k4),
        c2: 96.0 - 160.0 * k2 + 69.0 * k4 - 5.0 * k6,
        c1: -(64.0 - 144.0 * k2 + 96.0 * k4 - 16.0 * k6),
        c0: 16.0 * omk2 * omk2 * omk2,
    }
}

/// Horner evaluation of `N_k(t)`.
pub fn eval_nk(q: &QuarticNk, t: f64) -> f64 {
    (((q.c4 * t + q.c3) * t + q.c2) * t + q.c1) * t + q.c0
}

fn eval_nk_prime(q: &QuarticNk, t: f64) -> f64 {
    ((4.0 * q.c4 * t + 3.0 * q.c3) * t + 2.0 * q.c2) * t + q.c1
}

/// All roots of `N_k` strictly inside `(1 - k, 1 - k^2)`, ascending.
///
/// A dense scan (4096 cells) brackets sign changes; each bracket is shrunk by
/// bisection and polished with at most 50 Newton steps until
/// `|N_k| < 1e-13 * inf_norm` and the bracket width is below `1e-13`. Roots
/// closer than `1e-10` are merged. Returns an empty list when the window is
/// empty (`k = 0`) or carries no sign change.
pub fn quartic_roots_in_interval(q: &QuarticNk) -> Vec<f64> {
    let (lo, hi) = t_window(q.k);
    if !(hi > lo) {
        return Vec::new();
    }
    let width = hi - lo;
    let delta = 1e-12 * width;
    let (a, b) = (lo + delta, hi - delta);
    const CELLS: usize = 4096;
    let mut roots = Vec::new();
    let mut x_prev = a;
    let mut f_prev = eval_nk(q, x_prev);
    for i in 1..=CELLS {
        let x = a + (b - a) * i as f64 / CELLS as f64;
        let fx = eval_nk(q, x);
        if f_prev == 0.0 {
            roots.push(x_prev);
        } else if f_prev * fx < 0.0 {
            roots.push(refine_root(q, x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    if f_prev == 0.0 {
        roots.push(x_prev);
    }
    merge_close(roots)
}

fn refine_root(q: &QuarticNk, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = eval_nk(q, lo);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let fmid = eval_nk(q, mid);
        if fmid == 0.0 {
            return mid;
        }
        if flo * fmid < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    // Newton polish from the bracket midpoint, capped at 50 steps.
    let target = 1e-13 * q.inf_norm();
    let mut x = 0.5 * (lo + hi);
    for _ in 0..50 {
        let fx = eval_nk(q, x);
        if fx.abs() < target {
            break;
        }
        let dfx = eval_nk_prime(q, x);
        if dfx == 0.0 {
            break;
        }
        let next = x - fx / dfx;
        if !(lo..=hi).contains(&next) {
            break;
        }
        x = next;
    }
    x
}

fn merge_close(mut roots: Vec<f64>) -> Vec<f64> {
    roots.sort_by(f64::total_cmp);
    let mut merged: Vec<f64> = Vec::with_capacity(roots.len());
    for r in roots {
        match merged.last_mut() {
            Some(last) if (r - *last).abs() < 1e-10 => *last = 0.5 * (*last + r),
            _ => merged.push(r),
        }
    }
    merged
}
