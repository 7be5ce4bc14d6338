use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use isodirac::numerics::*;
use isodirac::{Error, Family, FamilyParams};

#[test]
fn quadrature_closed_forms() {
    let one = adaptive_quad(|_| 1.0, 0.0, 1.0, 1e-12).unwrap();
    assert_eq!(one.value, 1.0);
    let g = adaptive_quad(|x| (-x * x).exp(), 0.0, f64::INFINITY, 1e-13).unwrap();
    assert_abs_diff_eq!(g.value, PI.sqrt() / 2.0, epsilon = 1e-12);
    assert!(g.err_est <= 1e-13);
    let cases: [(fn(f64) -> f64, f64, f64, f64); 4] = [
        (|x| x.sin(), 0.0, PI, 2.0),
        (|x| 1.0 / (1.0 + x * x), f64::NEG_INFINITY, f64::INFINITY, PI),
        (|x| x.sqrt(), 0.0, 1.0, 2.0 / 3.0),
        (|x| (-x).exp() * x.powi(3), 0.0, f64::INFINITY, 6.0),
    ];
    for (f, a, b, exact) in cases {
        let r = adaptive_quad(f, a, b, 1e-10).unwrap();
        assert!((r.value - exact).abs() <= r.err_est.max(1e-15), "{exact}: {} +- {}", r.value, r.err_est);
        assert!(r.err_est <= 1e-10);
    }
}

#[test]
fn quadrature_reports_unreachable_tolerance() {
    let opts = QuadOptions { max_intervals: 8, ..QuadOptions::absolute(1e-14) };
    let r = integrate(|x| Ok((50.0 * x).sin().abs()), 0.0, 10.0, &opts);
    assert!(matches!(r, Err(Error::Quadrature { .. })), "{r:?}");
}

#[test]
fn ground_state_norm_by_quadrature() {
    let f = Family::new(FamilyParams::radial(3.0, 1.0, 1).unwrap()).unwrap();
    let r = adaptive_quad(|x| f.psi1(0, x).unwrap().powi(2), 1e-300, f64::INFINITY, 1e-12).unwrap();
    assert_abs_diff_eq!(r.value, 1.0, epsilon = 1e-8);
}

#[test]
fn harmonic_oscillator_spectrum() {
    let g = GridSpec::new(-12.0, 12.0, 2001).unwrap();
    let e = fd_eigensolve(|x| Ok(x * x), &g, 3, 1e-3).unwrap();
    for (n, v) in e.iter().enumerate() {
        assert_abs_diff_eq!(*v, 2.0 * n as f64 + 1.0, epsilon = 1e-4);
    }
}

#[test]
fn second_order_convergence_before_extrapolation() {
    let g = GridSpec::new(-12.0, 12.0, 401).unwrap();
    let a = fd_eigensolve_detailed(|x| Ok(x * x), &g, 3).unwrap();
    let b = fd_eigensolve_detailed(|x| Ok(x * x), &g.refined(), 3).unwrap();
    for n in 0..3 {
        let exact = 2.0 * n as f64 + 1.0;
        let (e1, e2, e3) = (a.coarse[n] - exact, a.fine[n] - exact, b.fine[n] - exact);
        for ratio in [e1 / e2, e2 / e3] {
            assert!((ratio / 4.0 - 1.0).abs() < 0.2, "level {n}: ratio {ratio}");
        }
    }
}

#[test]
fn eigensolver_limits() {
    let g = GridSpec::new(-12.0, 12.0, 401).unwrap();
    assert!(fd_eigensolve(|x| Ok(x * x), &g, 16, 1.0).is_err());
    assert!(fd_eigensolve(|x| Ok(x * x), &g, 0, 1.0).is_err());
    let coarse = GridSpec::new(-12.0, 12.0, 200).unwrap();
    match fd_eigensolve(|x| Ok(x * x), &coarse, 5, 1e-9) {
        Err(Error::NonConvergence { tol, .. }) => assert_eq!(tol, 1e-9),
        other => panic!("expected non-convergence, got {other:?}"),
    }
    assert!(fd_eigensolve(|x| if x > 3.0 { Ok(f64::NAN) } else { Ok(x * x) }, &g, 2, 1.0).is_err());
}

fn v1_spectrum(p: FamilyParams, k: usize) -> Vec<f64> {
    let f = Family::new(p).unwrap();
    let g = f.default_grid().unwrap();
    fd_eigensolve(|x| f.partner_potentials(x).map(|v| v.0), &g, k, 2e-3).unwrap()
}

#[test]
fn extended_radial_oscillator_spectrum() {
    let e = v1_spectrum(FamilyParams::radial(3.0, 1.0, 1).unwrap(), 4);
    for (v, exact) in e.iter().zip([0.0, 6.0, 12.0, 18.0]) {
        assert_abs_diff_eq!(*v, exact, epsilon = 1e-3);
    }
}

#[test]
fn extended_scarf_spectrum() {
    let e = v1_spectrum(FamilyParams::scarf_i(4.0, 2.0, 1).unwrap(), 3);
    for (v, exact) in e.iter().zip([0.0, 9.0, 20.0]) {
        assert_abs_diff_eq!(*v, exact, epsilon = 1e-3);
    }
}

#[test]
fn differencing() {
    assert!(central_diff(|_| 7.0, 0.3, DiffOrder::First, 1e-3).abs() < 1e-12);
    assert_abs_diff_eq!(central_diff(|x| x * x, 0.3, DiffOrder::Second, 1e-3), 2.0, epsilon = 1e-9);
    let f = Family::new(FamilyParams::radial(3.0, 1.0, 1).unwrap()).unwrap();
    let d = central_diff(|r| f.phi(r).unwrap(), 1.0, DiffOrder::First, 1e-3);
    assert_abs_diff_eq!(d, f.phi_with_derivative(1.0).unwrap().1, epsilon = 1e-7);
}

#[test]
fn default_grids_satisfy_the_tail_invariant() {
    for p in [
        FamilyParams::radial(3.0, 1.0, 1).unwrap(),
        FamilyParams::radial(0.5, 2.0, 2).unwrap(),
        FamilyParams::scarf_i(4.0, 2.0, 1).unwrap(),
        FamilyParams::gpt(2.0, 5.0, 1).unwrap(),
        FamilyParams::gpt(3.0, 6.5, 1).unwrap(),
    ] {
        let f = Family::new(p).unwrap();
        let g = f.default_grid().unwrap();
        assert!(g.len() >= MIN_NODES);
        assert!(f.domain().contains(g.x_min()) && f.domain().contains(g.x_max()));
        if f.domain().upper.is_infinite() {
            let s = SampledFunction::tabulate(g, |x| f.psi1(0, x)).unwrap();
            assert!(f.psi1(0, g.x_max()).unwrap().abs() < 1e-12 * s.max_abs(), "{p}");
        }
    }
}

#[test]
fn spec_default_grids() {
    let f = Family::new(FamilyParams::scarf_i(4.0, 2.0, 1).unwrap()).unwrap();
    let g = f.default_grid().unwrap();
    assert_eq!(g.len(), 4000);
    assert_abs_diff_eq!(g.x_max(), PI / 2.0 - 1e-6, epsilon = 1e-15);
    let f = Family::new(FamilyParams::radial(3.0, 1.0, 1).unwrap()).unwrap();
    let g = f.default_grid().unwrap();
    assert_eq!(g.len(), 4000);
    assert_abs_diff_eq!(g.x_min(), 1e-4, epsilon = 1e-15);
    assert_abs_diff_eq!(g.x_max(), 8.0, epsilon = 1e-12);
}
