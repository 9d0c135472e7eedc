//! Integration tests for the optimizer layer: derivative algebra, the
//! stationarity condition and its quartic reduction, golden-section
//! maximization against frozen reference points, and the concavity
//! certificate.

use hbound::exponent::{alpha0, alpha_of_t, distortion_from_k};
use hbound::optimize::{
    alpha_prime, alpha_prime_left_closed_form, alpha_prime_right_limit, alpha_star_or_limit,
    certify_concavity, endpoint_derivatives, eval_nk, maximize_alpha, p_prime, phi_coefficients,
    quartic_coeffs, quartic_roots_in_interval, s_prime, stationarity_residual,
    stationarity_residual_unsquared, t_window,
};

const K_GRID_9: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

/// `(k, t_star, alpha_star)` frozen from the high-precision oracle.
const CRITICAL_POINTS: [(f64, f64, f64); 5] = [
    (0.1, 0.925654363450050107, 0.864515285864691042),
    (0.3, 0.756942120768704012, 0.624357157586414709),
    (0.5, 0.5647578765064245286809, 0.4169744283623884304377),
    (0.7, 0.352126993374733065, 0.235222069479988213),
    (0.9, 0.121460065667182691, 0.0740562735167632686),
];

/// Closed-form `alpha'(1 - k)` at three lattice points, frozen from the
/// oracle as a guard against sign or factor slips in the formula.
const LEFT_DERIVS: [(f64, f64); 3] = [
    (0.1, 0.465106732497),
    (0.5, 0.363044240364),
    (0.9, 0.296550155327),
];

fn assert_close(label: &str, got: f64, want: f64, tol: f64) {
    let diff = (got - want).abs();
    assert!(
        diff <= tol,
        "{label}: got {got:.17e}, want {want:.17e}, |diff| = {diff:.3e} > {tol:.1e}"
    );
}

#[test]
fn frozen_critical_points() {
    for &(k, t_want, a_want) in &CRITICAL_POINTS {
        let cp = maximize_alpha(k, 1e-12).unwrap();
        assert_close(&format!("t_star({k})"), cp.t_star, t_want, 1e-11);
        assert_close(&format!("alpha_star({k})"), cp.alpha_star, a_want, 1e-13);
        let (lo, hi) = t_window(k);
        assert!(lo < cp.t_star && cp.t_star < hi, "t_star outside window");
    }
}

#[test]
fn critical_point_invariants() {
    for &k in &K_GRID_9 {
        let cp = maximize_alpha(k, 1e-12).unwrap();
        assert!(
            cp.derivative_residual < 1e-9,
            "alpha'(t_star) = {:.3e} at k={k}",
            cp.derivative_residual
        );
        assert!(
            cp.quartic_residual < 1e-8,
            "N_k(t_star) normalized = {:.3e} at k={k}",
            cp.quartic_residual
        );
        assert!(
            cp.agreement.is_nan() || cp.agreement <= 1e-8,
            "optimizer vs quartic distance {:.3e} at k={k}",
            cp.agreement
        );
        assert!(
            cp.stationarity < 1e-8,
            "stationarity residual {:.3e} at k={k}",
            cp.stationarity
        );
    }
}

#[test]
fn derivative_formula_matches_finite_differences() {
    for &k in &K_GRID_9 {
        let (lo, hi) = t_window(k);
        for j in 1..20 {
            let t = lo + (hi - lo) * j as f64 / 20.0;
            if t >= hi {
                continue;
            }
            let h = 1e-6 * (hi - lo);
            let fd_a =
                (alpha_of_t(k, t + h).unwrap() - alpha_of_t(k, t - h).unwrap()) / (2.0 * h);
            assert_close(
                &format!("alpha'({k},{t})"),
                alpha_prime(k, t).unwrap(),
                fd_a,
                1e-6,
            );
            // S' and P' against finite differences of the symmetric sums.
            let split = |t: f64| {
                let s = hbound::exponent::TSplit::new(k, t).unwrap();
                (s.s, s.p)
            };
            let (sp1, pp1) = split(t + h);
            let (sp0, pp0) = split(t - h);
            assert_close(
                &format!("S'({k},{t})"),
                s_prime(k, t).unwrap(),
                (sp1 - sp0) / (2.0 * h),
                1e-5,
            );
            assert_close(
                &format!("P'({k},{t})"),
                p_prime(k, t).unwrap(),
                (pp1 - pp0) / (2.0 * h),
                1e-5,
            );
        }
    }
}

#[test]
fn endpoint_derivative_signs_and_limits() {
    for &k in &K_GRID_9 {
        let (dl, dr) = endpoint_derivatives(k, 1e-9).unwrap();
        assert!(dl > 0.0, "left derivative {dl:.3e} not positive at k={k}");
        assert!(dr < 0.0, "right derivative {dr:.3e} not negative at k={k}");
        // Just inside the left endpoint the derivative matches its closed
        // form; just inside the right endpoint it approaches -3/k^2.
        assert_close(
            &format!("left closed form k={k}"),
            dl,
            alpha_prime_left_closed_form(k),
            1e-6,
        );
        let rel = (dr - alpha_prime_right_limit(k)).abs() / alpha_prime_right_limit(k).abs();
        assert!(rel < 1e-5, "right limit relative error {rel:.3e} at k={k}");
    }
    for &(k, want) in &LEFT_DERIVS {
        assert_close(
            &format!("alpha'(1-k) k={k}"),
            alpha_prime_left_closed_form(k),
            want,
            1e-10,
        );
    }
}

#[test]
fn stationarity_vanishes_only_in_squared_form() {
    // At the critical point the corrected (squared) combination
    // S S' P' + 3 P'^2 - P S'^2 vanishes; the unsquared variant
    // S S' P' + 3 P' - P S'^2 stays order-one, which is the numerical
    // fingerprint distinguishing the two forms.
    for &k in &[0.2, 0.5, 0.8] {
        let cp = maximize_alpha(k, 1e-12).unwrap();
        let (v, scale) = stationarity_residual(k, cp.t_star).unwrap();
        assert!(
            v.abs() / scale < 1e-10,
            "squared form {:.3e} at k={k}",
            v.abs() / scale
        );
        let (u, uscale) = stationarity_residual_unsquared(k, cp.t_star).unwrap();
        assert!(
            u.abs() / uscale > 1e-3,
            "unsquared variant unexpectedly small: {:.3e} at k={k}",
            u.abs() / uscale
        );
    }
}

#[test]
fn quartic_identity_with_stationarity() {
    // The stationarity combination, cleared of denominators by
    // (1 - k^2)^3 (1 - t)^5, equals t^2 (1 - t) N_k(t) identically.
    for &k in &K_GRID_9 {
        let q = quartic_coeffs(k);
        let hi = 1.0 - k * k;
        for j in 1..40 {
            let t = hi * j as f64 / 40.0;
            if t >= hi {
                continue;
            }
            let (v, _) = stationarity_residual(k, t).unwrap();
            let omt = 1.0 - t;
            let cleared = v * (1.0 - k * k).powi(3) * omt.powi(5);
            let rhs = t * t * omt * eval_nk(&q, t);
            let scale = cleared.abs().max(rhs.abs()).max(1e-30);
            assert!(
                (cleared - rhs).abs() / scale < 1e-9,
                "identity fails at k={k}, t={t}: {cleared:.6e} vs {rhs:.6e}"
            );
        }
    }
}

#[test]
fn quartic_coefficients_and_roots() {
    // k = 0 collapses to 16 (t - 1)^4.
    let q0 = quartic_coeffs(0.0);
    assert_eq!(
        (q0.c4, q0.c3, q0.c2, q0.c1, q0.c0),
        (16.0, -64.0, 96.0, -64.0, 16.0)
    );
    assert!(quartic_roots_in_interval(&q0).is_empty());

    // k = 0.5: exact coefficient values from the closed forms.
    let q = quartic_coeffs(0.5);
    assert_close("c4", q.c4, 16.0 - 16.0 * 0.25 + 0.0625, 1e-12);
    assert_close("c0", q.c0, 16.0 * 0.75f64.powi(3), 1e-12);

    // Interval roots at k = 0.5: the critical point plus one spurious root of
    // the cleared polynomial that the stationarity form does not see (the
    // squaring step introduces it). Both frozen from the oracle.
    let roots = quartic_roots_in_interval(&q);
    assert_eq!(roots.len(), 2, "expected two interval roots, got {roots:?}");
    assert_close("root 0", roots[0], 0.564757876506424529, 1e-10);
    assert_close("root 1", roots[1], 0.596642886102035891, 1e-10);
    // Residuals at the reported roots are at the numerical floor.
    for r in &roots {
        assert!(eval_nk(&q, *r).abs() / q.inf_norm() < 1e-12);
    }
    // The spurious root is not a critical point: alpha' is clearly nonzero.
    assert!(alpha_prime(0.5, roots[1]).unwrap().abs() > 1e-3);
}

#[test]
fn concavity_certificate() {
    for &k in &K_GRID_9 {
        let cert = certify_concavity(k, 1000).unwrap();
        assert!(cert.dalpha_left > 0.0, "k={k}: left slope {}", cert.dalpha_left);
        assert!(cert.dalpha_right < 0.0, "k={k}: right slope {}", cert.dalpha_right);
        assert!(
            cert.grid_second_deriv_max < 0.0,
            "k={k}: max alpha'' = {:.3e}",
            cert.grid_second_deriv_max
        );
        assert!(
            cert.phi_min_on_window > 0.0,
            "k={k}: phi min = {:.3e}",
            cert.phi_min_on_window
        );
    }
    assert!(certify_concavity(0.5, 8).is_err(), "grid too small");
}

#[test]
fn phi_structure() {
    // Exact values at k = 0.5.
    let p = phi_coefficients(0.5);
    assert_close("a(0.5)", p.a, 11.3125, 1e-12);
    assert_close("b(0.5)", p.b, 20.25, 1e-12);
    assert_close("c(0.5)", p.c, 9.0, 1e-12);
    assert_close("delta(0.5)", p.delta, 2.8125, 1e-10);
    assert_close("x1(0.5)", p.x1, 0.820903824, 1e-9);

    for &k in &K_GRID_9 {
        let p = phi_coefficients(k);
        // a > 0: phi opens upward on the whole k range.
        assert!(p.a > 0.0);
        // Discriminant identity delta = 80 k^4 (1 - k^2)^2.
        let want = 80.0 * k.powi(4) * (1.0 - k * k).powi(2);
        let rel = (p.delta - want).abs() / want.max(1e-30);
        assert!(rel < 1e-10, "delta identity off by {rel:.3e} at k={k}");
        // Smaller root sits at or beyond the right window endpoint, so phi
        // has no zero inside the window: alpha'' keeps its sign there.
        assert!(
            p.x1 >= 1.0 - k * k - 1e-12,
            "x1 = {} below 1 - k^2 at k={k}",
            p.x1
        );
        assert!(p.x2 >= p.x1);
        // phi at both window endpoints is positive.
        let (lo, hi) = t_window(k);
        for t in [lo, hi] {
            let val = p.a * t * t - p.b * t + p.c;
            assert!(val > 0.0, "phi({t}) = {val:.3e} at k={k}");
        }
    }
}

#[test]
fn alpha_is_unimodal_on_window() {
    // alpha' changes sign exactly once across the window.
    for &k in &K_GRID_9 {
        let (lo, hi) = t_window(k);
        let n = 2000;
        let mut changes = 0;
        let mut prev = alpha_prime(k, lo + (hi - lo) * 1e-6).unwrap();
        for j in 1..n {
            let t = lo + (hi - lo) * (j as f64 + 0.5) / (n as f64 + 1.0);
            let d = alpha_prime(k, t).unwrap();
            if d.signum() != prev.signum() {
                changes += 1;
            }
            prev = d;
        }
        assert_eq!(changes, 1, "alpha' sign changes {changes} times at k={k}");
    }
}

#[test]
fn maximizer_dominates_family_and_alpha0() {
    for &k in &[0.2, 0.5, 0.8] {
        let cp = maximize_alpha(k, 1e-12).unwrap();
        let params = distortion_from_k(k).unwrap();
        assert!(cp.alpha_star > alpha0(&params));
        let hi = 1.0 - k * k;
        for j in 1..200 {
            let t = hi * j as f64 / 200.0;
            if t >= hi {
                continue;
            }
            let a = alpha_of_t(k, t).unwrap();
            assert!(
                a <= cp.alpha_star + 1e-12,
                "alpha({t}) = {a:.17e} beats alpha_star at k={k}"
            );
        }
    }
}

#[test]
fn tolerance_and_degenerate_handling() {
    let coarse = maximize_alpha(0.5, 1e-6).unwrap();
    let fine = maximize_alpha(0.5, 1e-12).unwrap();
    assert!((coarse.t_star - fine.t_star).abs() < 1e-5);
    assert!(maximize_alpha(0.0, 1e-12).is_err());
    assert!(maximize_alpha(0.5, -1.0).is_err());
    // The continuity wrapper folds k = 0 into (alpha, t) = (1, 1).
    assert_eq!(alpha_star_or_limit(0.0, 1e-12).unwrap(), (1.0, 1.0));
    let (a, t) = alpha_star_or_limit(0.5, 1e-12).unwrap();
    assert_close("wrapper alpha", a, fine.alpha_star, 0.0);
    assert_close("wrapper t", t, fine.t_star, 0.0);
}
