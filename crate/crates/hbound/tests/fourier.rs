//! Integration tests for the Fourier and energy layer: the field corpus, the
//! angular profile round trip, the Parseval-type identities, the coefficient
//! relation separating gradients from non-gradients, exact energy quadrature,
//! and the decay estimators against the exponent bound.

use std::f64::consts::PI;

use hbound::fourier::{
    bound_vs_measured, coefficient_relation_check, corpus, cumulative_j, fourier_profile,
    generator_by_name, j_direct, j_from_fourier, morrey_estimate, parseval_checks, radial_derivs,
    sandwich_check, FieldSample, PolarGrid,
};
use hbound::optimize::alpha_star_or_limit;

fn assert_close(label: &str, got: f64, want: f64, tol: f64) {
    let diff = (got - want).abs();
    assert!(
        diff <= tol,
        "{label}: got {got:.17e}, want {want:.17e}, |diff| = {diff:.3e} > {tol:.1e}"
    );
}

fn field(name: &str) -> FieldSample {
    generator_by_name(name)
        .unwrap_or_else(|| panic!("missing corpus field {name}"))
        .generate(&PolarGrid::default_ladder())
}

const GRADIENTS: [&str; 7] = [
    "identity",
    "harm-iso-m2",
    "harm-m2",
    "harm-m3",
    "harm-m5",
    "trig-grad-a",
    "trig-grad-b",
];
const NON_GRADIENTS: [&str; 2] = ["stretch-k3", "twisted-probe"];

#[test]
fn corpus_inventory_and_gradient_flags() {
    let gens = corpus();
    assert_eq!(gens.len(), 9);
    let mut names: Vec<&str> = gens.iter().map(|g| g.name()).collect();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), 9, "corpus names must be unique");

    for name in GRADIENTS {
        let g = generator_by_name(name).unwrap();
        assert!(g.is_gradient(), "{name} should be flagged as a gradient");
        let defect = field(name).fzbar_imag_defect();
        assert!(defect <= 1e-13, "{name}: Im f_zbar defect {defect:.3e}");
    }
    for name in NON_GRADIENTS {
        let g = generator_by_name(name).unwrap();
        assert!(!g.is_gradient(), "{name} should not be flagged as gradient");
        let defect = field(name).fzbar_imag_defect();
        assert!(defect > 1e-3, "{name}: defect only {defect:.3e}");
    }
    assert!(generator_by_name("no-such-field").is_none());
}

#[test]
fn identity_field_energy_is_pi_r_squared() {
    let f = field("identity");
    for &r in &f.grid.radii {
        let want = PI * r * r;
        assert_close(
            &format!("J({r})"),
            j_direct(&f, r).unwrap(),
            want,
            1e-12 * want,
        );
    }
    // Off-rung radii go through the partial-segment path of the quadrature.
    for r in [0.07, 0.1, 0.7321] {
        let want = PI * r * r;
        assert_close(
            &format!("J({r}) off-rung"),
            j_direct(&f, r).unwrap(),
            want,
            1e-12 * want.max(1e-3),
        );
    }
    assert!(j_direct(&f, 1.5).is_err(), "radius beyond the grid");

    let m = morrey_estimate(&f).unwrap();
    assert_close("alpha_ratio", m.alpha_ratio, 1.0, 1e-12);
    assert_close("alpha_regression", m.alpha_regression, 1.0, 1e-10);

    // f = z has no antiholomorphic part at all: the distortion is zero and
    // the bound degenerates to exponent 1, matched by the measurement.
    let b = bound_vs_measured(&f, 1e-12).unwrap();
    assert_close("k_emp", b.k_emp, 0.0, 0.0);
    assert_close("alpha_bound", b.alpha_bound, 1.0, 0.0);
    assert_close("alpha_measured", b.alpha_measured, 1.0, 1e-12);
}

#[test]
fn stretch_field_realizes_the_classical_rate() {
    // The radial stretch with K = 3 has J(r) = pi r^(2/3): the classical
    // exponent 1/K is attained, and the per-rung ratio never exceeds it.
    let f = field("stretch-k3");
    for &r in &f.grid.radii {
        let want = PI * r.powf(2.0 / 3.0);
        assert_close(
            &format!("J({r})"),
            j_direct(&f, r).unwrap(),
            want,
            1e-10 * want,
        );
    }
    let m = morrey_estimate(&f).unwrap();
    assert_close("alpha_ratio", m.alpha_ratio, 1.0 / 3.0, 1e-10);
    assert_close("alpha_regression", m.alpha_regression, 1.0 / 3.0, 1e-8);
    for (i, v) in m.per_radius.iter().enumerate() {
        assert_close(&format!("ratio at rung {i}"), *v, 1.0 / 3.0, 1e-9);
    }

    // Its distortion is exactly 1/2 at every node.
    let k_emp = f.empirical_distortion().unwrap();
    assert_close("k_emp", k_emp, 0.5, 1e-12);

    // The field is not a gradient, and the gradient-only exponent bound
    // genuinely fails for it: alpha_star(1/2) exceeds the measured 1/3.
    assert!(bound_vs_measured(&f, 1e-12).is_err());
    let (alpha_bound, _) = alpha_star_or_limit(k_emp, 1e-12).unwrap();
    assert!(
        alpha_bound > 1.0 / 3.0 + 0.08,
        "alpha_star({k_emp}) = {alpha_bound} does not separate from 1/3"
    );
}

#[test]
fn stretch_field_on_fine_grid() {
    // Resolution stress: 512 rungs by 512 angles, energy still matches the
    // closed form to much better than 1e-6 relative.
    let grid = PolarGrid::geometric(1.0, 0.98, 512, 512).unwrap();
    let f = generator_by_name("stretch-k3").unwrap().generate(&grid);
    let mut worst = 0.0f64;
    for &r in &f.grid.radii {
        let want = PI * r.powf(2.0 / 3.0);
        let got = j_direct(&f, r).unwrap();
        worst = worst.max((got - want).abs() / want);
    }
    assert!(worst < 1e-6, "relative energy error {worst:.3e} on 512x512");
}

#[test]
fn harmonic_fields_hit_the_constant_coefficient_distortion() {
    // All anisotropic scaled harmonics with (Lambda, lambda) = (3, 1) reach
    // |mu| = 1/2 on the grid (theta = 0 is a grid node), never exceed it,
    // and satisfy the ellipticity sandwich with their true eigenvalues.
    for name in ["harm-m2", "harm-m3", "harm-m5"] {
        let f = field(name);
        let k_emp = f.empirical_distortion().unwrap();
        assert_close(&format!("{name} k_emp"), k_emp, 0.5, 1e-12);
        let worst = sandwich_check(&f, 3.0, 1.0).unwrap();
        assert!(worst <= 1e-12, "{name}: sandwich defect {worst:.3e}");
    }
    // The isotropic member is conformal: no antiholomorphic part.
    let iso = field("harm-iso-m2");
    assert_close("iso k_emp", iso.empirical_distortion().unwrap(), 0.0, 0.0);

    // Tightening the claimed eigenvalue spread must break the sandwich: the
    // check is not vacuous.
    let broken = sandwich_check(&field("harm-m2"), 2.0, 1.0).unwrap();
    assert!(broken > 1e-3, "tightened sandwich defect only {broken:.3e}");
    assert!(sandwich_check(&field("harm-m2"), 1.0, 3.0).is_err());

    // Degree 2 has constant derivatives: the energy grows exactly like r^2.
    let m2 = morrey_estimate(&field("harm-m2")).unwrap();
    for (i, v) in m2.per_radius.iter().enumerate() {
        assert_close(&format!("harm-m2 ratio rung {i}"), *v, 1.0, 1e-10);
    }
}

#[test]
fn profile_round_trip_recovers_modes() {
    for gen in corpus() {
        let f = gen.generate(&PolarGrid::default_ladder());
        let modes = f.meta.modes.clone().expect("corpus fields carry modes");
        let profile = fourier_profile(&f, 32).unwrap();
        let scale = modes.iter().map(|m| m.coeff.norm()).fold(0.0, f64::max);
        for (ri, &r) in profile.radii.iter().enumerate() {
            for m in &modes {
                let want = m.coeff * r.powf(m.power);
                let got = profile.c_at(ri, m.n);
                assert!(
                    (got - want).norm() <= 1e-12 * scale.max(1.0),
                    "{}: mode {} at r={r}: {got} vs {want}",
                    gen.name(),
                    m.n
                );
            }
            // A mode index used by no corpus member stays at rounding level.
            assert!(profile.c_at(ri, 7).norm() <= 1e-13 * scale.max(1.0));
            // d_n = n c_n by definition.
            let d = profile.d_at(ri, 3);
            let c = profile.c_at(ri, 3);
            assert!((d - c * 3.0).norm() == 0.0);
        }
        assert!(profile.radius_index(0.123456).is_err());
    }

    // Aliasing guard: 64 angles support order 31 but not order 32.
    let small = PolarGrid::geometric(1.0, 0.5, 16, 64).unwrap();
    let f = generator_by_name("identity").unwrap().generate(&small);
    assert!(fourier_profile(&f, 32).is_err());
    assert!(fourier_profile(&f, 31).is_ok());
}

#[test]
fn energy_dual_paths_agree() {
    // J(r) via coefficients equals J(r) via direct quadrature on every rung
    // of every corpus field.
    for gen in corpus() {
        let f = gen.generate(&PolarGrid::default_ladder());
        let profile = fourier_profile(&f, 32).unwrap();
        for &r in &f.grid.radii {
            let a = j_from_fourier(&profile, r).unwrap();
            let b = j_direct(&f, r).unwrap();
            assert!(
                (a - b).abs() <= 1e-8 * a.abs().max(1.0),
                "{}: J({r}) coefficient path {a:.12e} vs direct {b:.12e}",
                gen.name()
            );
        }
    }
}

#[test]
fn parseval_identities_hold_circle_by_circle() {
    for gen in corpus() {
        let f = gen.generate(&PolarGrid::default_ladder());
        let profile = fourier_profile(&f, 32).unwrap();
        let derivs = radial_derivs(&f, &profile);
        for ri in (0..profile.radii.len()).step_by(4) {
            let rep = parseval_checks(&f, &profile, &derivs, ri).unwrap();
            assert!(
                rep.p_residual <= 1e-10,
                "{}: p residual {:.3e} at r={}",
                gen.name(),
                rep.p_residual,
                rep.r
            );
            assert!(
                rep.q_residual <= 1e-10,
                "{}: q residual {:.3e} at r={}",
                gen.name(),
                rep.q_residual,
                rep.r
            );
            assert!(
                rep.energy_residual <= 1e-10,
                "{}: energy residual {:.3e} at r={}",
                gen.name(),
                rep.energy_residual,
                rep.r
            );
        }
        assert!(parseval_checks(&f, &profile, &derivs, 999).is_err());
    }
}

#[test]
fn coefficient_relation_separates_gradients() {
    // With analytic radial derivatives the conjugate-pair relation is exact
    // for gradients and order-one for the two non-gradient probes.
    for name in GRADIENTS {
        let f = field(name);
        let profile = fourier_profile(&f, 32).unwrap();
        let derivs = radial_derivs(&f, &profile);
        let worst = coefficient_relation_check(&profile, &derivs);
        assert!(worst <= 1e-10, "{name}: relation residual {worst:.3e}");
    }

    let twisted = field("twisted-probe");
    let profile = fourier_profile(&twisted, 32).unwrap();
    let derivs = radial_derivs(&twisted, &profile);
    let worst = coefficient_relation_check(&profile, &derivs);
    assert!(worst > 0.5, "twisted-probe residual only {worst:.3e}");

    // The stretch violates it too, maximally at the smallest radius where
    // (2/3) r^(-2/3) peaks.
    let stretch = field("stretch-k3");
    let profile = fourier_profile(&stretch, 32).unwrap();
    let derivs = radial_derivs(&stretch, &profile);
    let worst = coefficient_relation_check(&profile, &derivs);
    assert!(
        (1.0..10.0).contains(&worst),
        "stretch-k3 residual {worst:.3e} outside the expected window"
    );
}

#[test]
fn finite_difference_derivatives_back_up_the_analytic_path() {
    // Strip the mode metadata so radial_derivs falls back to finite
    // differences on the ladder, then compare against the analytic values.
    let f = field("trig-grad-b");
    let profile = fourier_profile(&f, 32).unwrap();
    let analytic = radial_derivs(&f, &profile);

    let mut stripped = f.clone();
    stripped.meta.modes = None;
    let fd = radial_derivs(&stripped, &profile);

    let mut worst = 0.0f64;
    for ri in 0..profile.radii.len() {
        for n in -32..=32i64 {
            worst = worst.max((fd.at(ri, n) - analytic.at(ri, n)).norm());
        }
    }
    assert!(worst <= 5e-3, "FD vs analytic derivative gap {worst:.3e}");

    // The gradient/non-gradient separation survives the FD path.
    let grad_resid = coefficient_relation_check(&profile, &fd);
    assert!(grad_resid <= 1e-2, "FD relation residual {grad_resid:.3e}");

    let twisted = field("twisted-probe");
    let tprofile = fourier_profile(&twisted, 32).unwrap();
    let mut tstripped = twisted.clone();
    tstripped.meta.modes = None;
    let tfd = radial_derivs(&tstripped, &tprofile);
    let tresid = coefficient_relation_check(&tprofile, &tfd);
    assert!(tresid > 0.5, "twisted FD residual only {tresid:.3e}");
}

#[test]
fn disk_energy_is_monotone_for_the_corpus() {
    for gen in corpus() {
        let f = gen.generate(&PolarGrid::default_ladder());
        let j = cumulative_j(&f);
        assert!(j[0] >= 0.0);
        for w in j.windows(2) {
            assert!(
                w[1] >= w[0] - 1e-14,
                "{}: disk energy decreases: {} -> {}",
                gen.name(),
                w[0],
                w[1]
            );
        }
        assert!(*j.last().unwrap() > 0.0);
    }
}

#[test]
fn measured_decay_never_falls_below_the_bound() {
    for name in GRADIENTS {
        let f = field(name);
        let r = bound_vs_measured(&f, 1e-12).unwrap();
        assert!(
            r.alpha_bound <= r.alpha_measured + 1e-4,
            "{name}: bound {:.6} exceeds measured {:.6}",
            r.alpha_bound,
            r.alpha_measured
        );
        assert!(r.k_emp < 1.0);
    }
    for name in NON_GRADIENTS {
        assert!(bound_vs_measured(&field(name), 1e-12).is_err());
    }
}

#[test]
fn grid_construction_guards() {
    assert!(PolarGrid::new(vec![0.5, 1.0], 100).is_err(), "non power of two");
    assert!(PolarGrid::new(vec![0.5, 1.0], 32).is_err(), "too few angles");
    assert!(PolarGrid::new(vec![0.5, 0.5], 64).is_err(), "not increasing");
    assert!(PolarGrid::new(vec![0.5, 1.5], 64).is_err(), "beyond unit disk");
    assert!(PolarGrid::new(vec![], 64).is_err());
    assert!(PolarGrid::geometric(1.0, 1.5, 8, 64).is_err());
    assert!(PolarGrid::geometric(1.0, 0.5, 1, 64).is_err());

    let ladder = PolarGrid::default_ladder();
    assert_eq!(ladder.radii.len(), 33);
    assert_eq!(ladder.n_theta, 256);
    assert_close("r_min", ladder.radii[0], 1.0 / 16.0, 1e-12);
    assert_close("r_max", *ladder.radii.last().unwrap(), 1.0, 0.0);
}
