//! Curvature of flat space and of the dust family on full grids.

use std::f64::consts::{FRAC_PI_2, PI};

use qsp_core::dust::{grid, linspace, DustSolution};
use qsp_core::geometry::{self, FnMetric};
use qsp_core::jets::Jet2;

const PROFILES: [&str; 3] = ["r", "2*r^3", "0.5*r^1.5"];

#[test]
fn minkowski_is_flat_in_r_and_theta() {
    for c in [1.0, 3.0] {
        let m = geometry::minkowski(c);
        for r in linspace(0.5, 5.0, 10) {
            for theta in linspace(0.1, PI - 0.1, 10) {
                let e = geometry::einstein_tensor(&m, r, 2.0, theta).unwrap();
                assert!(e.max_abs() < 1e-10, "c={c} r={r} theta={theta}: {e:?}");
            }
        }
    }
}

#[test]
fn family_solves_field_equations_on_grid() {
    let pts = grid(&linspace(0.5, 5.0, 20), &linspace(0.5, 5.0, 20));
    for f in PROFILES {
        let report = DustSolution::parse(f, "0").unwrap().verify_family(&pts);
        let s = report.summary;
        assert_eq!(s.singular_points, 0, "F={f}");
        for (name, x) in [
            ("eq11", s.eq11),
            ("eq13", s.eq13),
            ("G01", s.g01),
            ("G11", s.g11),
            ("G22", s.g22),
            ("G33", s.g33),
            ("source", s.source),
        ] {
            assert!(x < 1e-8, "F={f}: {name} = {x:e}");
        }
        // Rows stay in grid order.
        for (row, &(r, t)) in report.rows.iter().zip(&pts) {
            assert_eq!((row.r, row.tau), (r, t));
        }
    }
}

#[test]
fn family_with_nonzero_g_profile() {
    let sol = DustSolution::parse("r^2", "1 + r").unwrap();
    let pts = grid(&linspace(0.5, 3.0, 6), &linspace(0.5, 3.0, 6));
    let s = sol.verify_family(&pts).summary;
    assert_eq!(s.singular_points, 0);
    assert!(s.eq11 < 1e-8 && s.eq13 < 1e-8 && s.g01 < 1e-8 && s.g22 < 1e-8);
    assert!(s.source < 1e-8);
}

#[test]
fn printed_eq12_carries_the_known_offset() {
    let p = DustSolution::parse("r", "0")
        .unwrap()
        .verify_point(1.0, 1.0)
        .unwrap();
    assert!((p.explicit.eq12 - 1.0 / 9.0).abs() < 1e-10);
    assert!(p.einstein.g01.abs() < 1e-8);
}

#[test]
fn printed_eq14_differs_from_generic_g22() {
    // Closed form of the printed residual on F = r, G = 0.
    let sol = DustSolution::parse("r", "0").unwrap();
    for (r, t) in [(1.0, 1.0), (2.0, 0.5), (3.0, 4.0)] {
        let p = sol.verify_point(r, t).unwrap();
        let expected = -1.0 - 2.0 * f64::powf(r, 4.0 / 3.0) / (3.0 * f64::powf(t, 2.0 / 3.0));
        assert!((p.explicit.eq14 - expected).abs() < 1e-9, "({r}, {t})");
        assert!(p.einstein.g22.abs() < 1e-8);
    }
}

#[test]
fn exponent_one_breaks_eq13() {
    let sol = DustSolution::parse("r", "0").unwrap().with_exponent(1.0);
    let p = sol.verify_point(1.0, 1.0).unwrap();
    assert!((p.explicit.eq13 + 1.0 / 16.0).abs() < 1e-12);
}

#[test]
fn einstein_tensor_ignores_theta() {
    let sol = DustSolution::parse("2*r^3", "0").unwrap();
    let m = sol.metric_of(1.0);
    let reference = geometry::einstein_tensor(&m, 1.3, 2.1, FRAC_PI_2).unwrap();
    for theta in linspace(0.2, 2.9, 7) {
        let e = geometry::einstein_tensor(&m, 1.3, 2.1, theta).unwrap();
        let diag = e.g33 / theta.sin().powi(2) - reference.g33;
        assert!((e.g00 - reference.g00).abs() < 1e-12);
        assert!((e.g01 - reference.g01).abs() < 1e-12);
        assert!((e.g11 - reference.g11).abs() < 1e-12);
        assert!((e.g22 - reference.g22).abs() < 1e-12);
        assert!(diag.abs() < 1e-10);
    }
}

#[test]
fn dust_g00_matches_frw_density() {
    // Every member with G = 0 is spatially flat FRW dust: G00 = 4 / (3 tau^2).
    for f in PROFILES {
        let m = DustSolution::parse(f, "0").unwrap();
        for tau in [0.7, 1.0, 3.5] {
            let e = geometry::einstein_tensor(&m.metric_of(1.0), 1.7, tau, 1.0).unwrap();
            assert!(
                (e.g00 - 4.0 / (3.0 * tau * tau)).abs() < 1e-10,
                "F={f} tau={tau}"
            );
        }
    }
}

#[test]
fn three_sphere_slice_has_curvature_six() {
    let sphere = FnMetric {
        c: 1.0,
        w_of: |_r: Jet2, _t: Jet2| Ok(Jet2::ZERO),
        v_of: |r: Jet2, _t: Jet2| Ok(r.sin().ln()?.scale(2.0)),
    };
    for chi in linspace(0.3, 2.8, 6) {
        let s = geometry::spatial_ricci_scalar(&sphere, chi, 1.1).unwrap();
        assert!((s - 6.0).abs() < 1e-8, "chi={chi}: {s}");
    }
}

#[test]
fn density_matches_amplitude_squared() {
    for f in PROFILES {
        for (gn, m) in [(1.0, 1.0), (0.5, 2.0), (3.0, 0.25)] {
            let sol = DustSolution::parse(f, "0").unwrap().with_constants(gn, m);
            for tau in linspace(0.5, 5.0, 7) {
                let rhos: Vec<f64> = linspace(0.5, 5.0, 9)
                    .into_iter()
                    .map(|r| sol.density(r, tau).unwrap())
                    .collect();
                let expected = 1.0 / (6.0 * PI * gn * tau * tau);
                for rho in &rhos {
                    assert!((rho - expected).abs() < 1e-12 * expected.max(1.0));
                    let amp = sol.amplitude(tau).unwrap();
                    assert!((rho - m * amp * amp).abs() < 1e-12 * expected.max(1.0));
                }
                let spread = rhos.iter().cloned().fold(f64::MIN, f64::max)
                    - rhos.iter().cloned().fold(f64::MAX, f64::min);
                assert!(spread < 1e-12);
            }
        }
    }
}

#[test]
fn amplitude_times_tau_is_constant() {
    let sol = DustSolution::parse("r", "0").unwrap().with_norm(2.5);
    let k = sol.amplitude_prefactor();
    for tau in linspace(0.1, 10.0, 25) {
        assert!((sol.amplitude(tau).unwrap() * tau - k).abs() < 1e-14);
    }
}

#[test]
fn family_solves_field_equations_for_any_c() {
    let pts = grid(&linspace(0.5, 5.0, 6), &linspace(0.5, 5.0, 6));
    for c in [0.5, 2.0, 10.0] {
        let s = DustSolution::parse("2*r^3", "0")
            .unwrap()
            .with_constants(0.3, 2.0)
            .with_c(c)
            .verify_family(&pts)
            .summary;
        assert!(s.eq11 < 1e-8 && s.eq13 < 1e-8, "c={c}: {s:?}");
        assert!(
            s.g01 < 1e-8 && s.g22 < 1e-8 && s.source < 1e-8,
            "c={c}: {s:?}"
        );
    }
}
