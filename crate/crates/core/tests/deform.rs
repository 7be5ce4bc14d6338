mod common;

use std::sync::Arc;

use approx::assert_abs_diff_eq;
use common::linspace;
use isodirac::numerics::{central_diff, integrate, DiffOrder, QuadOptions};
use isodirac::verify::fixtures;
use isodirac::{Deformation, DeformedFamily, Error, Family, FamilyParams, IntegralTable, Sector, SpinorLevel};

fn family(p: FamilyParams) -> Arc<Family> {
    Arc::new(Family::new(p).unwrap())
}

fn radial() -> DeformedFamily {
    let f = family(FamilyParams::radial(3.0, 1.0, 1).unwrap());
    DeformedFamily::with_default_grid(f, Deformation::Undeformed).unwrap()
}

fn canonical() -> Vec<DeformedFamily> {
    [
        FamilyParams::radial(3.0, 1.0, 1).unwrap(),
        FamilyParams::scarf_i(4.0, 2.0, 1).unwrap(),
        FamilyParams::gpt(2.0, 5.0, 1).unwrap(),
    ]
    .into_iter()
    .map(|p| DeformedFamily::with_default_grid(family(p), Deformation::Undeformed).unwrap())
    .collect()
}

fn with(d: &DeformedFamily, lambda: f64) -> DeformedFamily {
    d.with_deformation(Deformation::from_lambda(lambda).unwrap()).unwrap()
}

/// `max |-psi'' + (V - E) psi| / max |psi|` over a window.
fn residual(d: &DeformedFamily, psi: impl Fn(f64) -> f64, e: f64, lo: f64, hi: f64) -> f64 {
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for x in linspace(lo, hi, 200) {
        let p = psi(x);
        let d2 = central_diff(&psi, x, DiffOrder::Second, 1e-3);
        worst = worst.max((-d2 + (d.v1(x).unwrap() - e) * p).abs());
        scale = scale.max(p.abs());
    }
    worst / scale
}

#[test]
fn lambda_validity() {
    let err = Deformation::generic(-0.5).unwrap_err();
    assert!(matches!(err, Error::InvalidDeformation(_)));
    assert!(err.to_string().contains("vanishes in-domain"), "{err}");
    assert!(Deformation::generic(f64::NAN).is_err());
    assert!(Deformation::from_lambda(-0.999).is_err());
    assert_eq!(Deformation::from_lambda(0.0).unwrap(), Deformation::Pursey);
    assert_eq!(Deformation::from_lambda(-1.0).unwrap(), Deformation::AbrahamMoses);
    assert_eq!(Deformation::from_lambda(f64::INFINITY).unwrap(), Deformation::Undeformed);
    assert_eq!(Deformation::from_lambda(-1.5).unwrap(), Deformation::Generic(-1.5));
}

#[test]
fn cumulative_integral() {
    let d = radial();
    let t = d.table();
    assert!(t.forward(1e-9).unwrap().abs() < 1e-30);
    assert_abs_diff_eq!(t.total(), 1.0, epsilon = 1e-8);
    assert_abs_diff_eq!(t.forward(40.0).unwrap(), 1.0, epsilon = 1e-8);
    assert_abs_diff_eq!(t.forward(1.0).unwrap(), fixtures::radial::integral(1.0), epsilon = 1e-9);
    assert_abs_diff_eq!(t.forward(1.0).unwrap(), 0.3616862960428802, epsilon = 1e-12);
    for x in linspace(0.05, 6.0, 200) {
        assert_abs_diff_eq!(t.forward(x).unwrap(), fixtures::radial::integral(x), epsilon = 1e-8);
        assert_abs_diff_eq!(t.forward(x).unwrap() + t.backward(x).unwrap(), 1.0, epsilon = 1e-12);
    }
    assert!(t.err_est() < 1e-10);
}

#[test]
fn table_must_lie_inside_domain() {
    let f = family(FamilyParams::radial(3.0, 1.0, 1).unwrap());
    let g = isodirac::numerics::GridSpec::new(-1.0, 5.0, 400).unwrap();
    assert!(matches!(IntegralTable::compute(&f, &g), Err(Error::Grid(_))));
}

#[test]
fn undeformed_is_identity() {
    for d in canonical() {
        let (lo, hi) = d.family().sampling_window().unwrap();
        for x in linspace(lo, hi, 50) {
            assert_eq!(d.phi(x).unwrap(), d.family().phi(x).unwrap());
            assert_eq!(d.excited_state(0, x).unwrap(), d.family().psi1(1, x).unwrap());
            assert_eq!(d.ground_state(x).unwrap(), d.family().psi1(0, x).unwrap());
        }
    }
}

#[test]
fn radial_closed_forms() {
    let d = radial();
    assert_abs_diff_eq!(with(&d, 1.0).phi(1.0).unwrap(), fixtures::radial::phi_lambda(1.0, 1.0), epsilon = 1e-8);
    assert_abs_diff_eq!(with(&d, 0.0).phi(1.0).unwrap(), fixtures::radial::pursey(1.0), epsilon = 1e-8);
    assert_abs_diff_eq!(with(&d, -1.0).phi(1.0).unwrap(), fixtures::radial::abraham_moses(1.0), epsilon = 1e-8);
}

#[test]
fn large_lambda_recovers_undeformed() {
    for d in canonical() {
        let (lo, hi) = d.family().sampling_window().unwrap();
        for lambda in [1e8, -1e8] {
            let big = with(&d, lambda);
            for x in linspace(lo, hi, 60) {
                assert!((big.v1(x).unwrap() - d.v1(x).unwrap()).abs() < 1e-6);
                assert!((big.phi(x).unwrap() - d.phi(x).unwrap()).abs() < 1e-6);
                let psi0 = d.ground_state(x).unwrap();
                assert!((big.ground_state(x).unwrap().abs() - psi0.abs()).abs() < 1e-6);
                assert!((big.excited_state(0, x).unwrap() - d.excited_state(0, x).unwrap()).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn log_route_against_differenced_log() {
    let d = radial();
    let l = with(&d, 0.1);
    let t = d.table();
    let h = 5e-3;
    let ln_den = |x: f64| (t.forward(x).unwrap() + 0.1).ln();
    let second = central_diff(ln_den, 1.0, DiffOrder::Second, h);
    let expected = d.v1(1.0).unwrap() - 2.0 * second;
    assert_abs_diff_eq!(l.v1(1.0).unwrap(), expected, epsilon = 1e-6);
}

#[test]
fn two_routes_agree() {
    for d in canonical() {
        let (lo, hi) = d.family().sampling_window().unwrap();
        for lambda in [0.05, 0.1, 1.0, 10.0] {
            let l = with(&d, lambda);
            for x in linspace(lo, hi, 200) {
                let (a, b) = (l.v1(x).unwrap(), l.v1_log_route(x).unwrap());
                assert!((a - b).abs() < 1e-7 * (1.0 + a.abs()), "{} lambda={lambda} x={x}", d.family().params());
            }
        }
    }
}

#[test]
fn denominators_keep_their_sign() {
    for d in canonical() {
        let t = d.table();
        for lambda in [0.05, 1.0, 10.0] {
            assert!(t.forward_values().iter().all(|i| i + lambda >= lambda));
        }
        for lambda in [-1.001, -1.5, -3.0] {
            assert!(t.forward_values().iter().all(|i| i + lambda <= 1.0 + lambda + 1e-15));
            assert!(t.backward_values().iter().all(|j| (1.0 + lambda) - j < 0.0));
        }
    }
}

#[test]
fn deformed_ground_states_are_normalized() {
    for d in canonical() {
        for lambda in [0.05, 0.5, 1.0, 10.0, -1.5, -2.0] {
            let l = with(&d, lambda);
            let norm = l.norm_of(|x| l.ground_state(x)).unwrap();
            assert!((norm - 1.0).abs() < 1e-8, "{} lambda={lambda}: {norm}", d.family().params());
        }
    }
}

#[test]
fn negative_branch_ground_state_is_real_and_nodeless() {
    let d = with(&radial(), -1.5);
    let (lo, hi) = d.family().sampling_window().unwrap();
    let vals: Vec<f64> = linspace(lo, hi, 2000).map(|x| d.ground_state(x).unwrap()).collect();
    assert!(vals.iter().all(|v| v.is_finite()));
    assert!(vals.iter().all(|v| *v < 0.0) || vals.iter().all(|v| *v > 0.0));
}

#[test]
fn duality_shares_the_normalization_factor() {
    let d = radial();
    for lambda in [0.2, 1.0, 4.0] {
        let (a, b) = (with(&d, lambda), with(&d, -1.0 - lambda));
        for x in linspace(0.2, 3.0, 20) {
            let ka = a.ground_state(x).unwrap() * a.denominator(x).unwrap().unwrap() / d.ground_state(x).unwrap();
            let kb = b.ground_state(x).unwrap() * b.denominator(x).unwrap().unwrap() / d.ground_state(x).unwrap();
            assert_abs_diff_eq!(ka, kb, epsilon = 1e-12);
            assert_abs_diff_eq!(ka, (lambda * (1.0 + lambda)).sqrt(), epsilon = 1e-12);
        }
    }
}

#[test]
fn excited_states_solve_the_deformed_equation() {
    let d = radial();
    for lambda in [1.0, 0.1, -1.5] {
        let l = with(&d, lambda);
        for n in 0..3 {
            let e = d.family().params().energy(Sector::One, n + 1).unwrap();
            let r = residual(&l, |x| l.excited_state(n, x).unwrap(), e, 0.1, 5.0);
            assert!(r < 1e-5, "lambda={lambda} n={n}: {r}");
        }
        let r = residual(&l, |x| l.ground_state(x).unwrap(), 0.0, 0.1, 5.0);
        assert!(r < 1e-5, "ground lambda={lambda}: {r}");
    }
    let pursey = with(&d, 0.0);
    let r = residual(&pursey, |x| pursey.excited_state(0, x).unwrap(), 6.0, 0.1, 5.0);
    assert!(r < 1e-5, "pursey: {r}");
    let am = with(&d, -1.0);
    let r = residual(&am, |x| am.excited_state(0, x).unwrap(), 6.0, 0.1, 3.5);
    assert!(r < 1e-5, "am: {r}");
}

#[test]
fn excited_norms_are_reported_near_one() {
    for d in canonical() {
        let n_max = d.family().params().bound_state_count(Sector::Two).unwrap_or(3).min(3);
        for lambda in [1.0, -1.5] {
            let l = with(&d, lambda);
            for n in 0..n_max {
                let norm = l.excited_norm(n).unwrap();
                assert!((norm - 1.0).abs() < 1e-6, "{} lambda={lambda} n={n}: {norm}", d.family().params());
            }
        }
    }
}

#[test]
fn limits_have_no_ground_state() {
    let d = radial();
    for lambda in [0.0, -1.0] {
        let l = with(&d, lambda);
        assert!(matches!(l.ground_state(1.0), Err(Error::InvalidDeformation(_))));
        assert!(l.deformation().deletes_ground_state());
        let e: Vec<f64> = l.spectrum(3).iter().map(|s| s.energy).collect();
        assert_eq!(e, vec![6.0, 12.0, 18.0]);
    }
    assert!(with(&d, 1.0).deleted_candidate(1.0).is_err());
}

fn truncated_norm(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    integrate(|x| Ok(f(x).powi(2)), a, b, &QuadOptions::relative(1e-10)).unwrap().value
}

#[test]
fn deleted_candidates_are_not_normalizable() {
    let d = radial();
    let p = with(&d, 0.0);
    let pc = |x: f64| p.deleted_candidate(x).unwrap();
    let (n1, n2) = (truncated_norm(pc, 1e-2, 1.0), truncated_norm(pc, 1e-3, 1.0));
    assert!(n2 > 1e3 * n1, "Pursey candidate should blow up at the origin: {n1} -> {n2}");

    let am = with(&d, -1.0);
    let ac = |x: f64| am.deleted_candidate(x).unwrap();
    let (n1, n2) = (truncated_norm(ac, 1.0, 4.0), truncated_norm(ac, 1.0, 6.0));
    assert!(n2 > 1e3 * n1, "AM candidate should blow up at infinity: {n1} -> {n2}");
}

#[test]
fn singular_denominators_are_reported() {
    let d = radial();
    let p = with(&d, 0.0);
    assert!(matches!(p.phi(1e-200), Err(Error::Singularity { .. })));
    let am = with(&d, -1.0);
    match am.phi(60.0) {
        Err(Error::Singularity { x, .. }) => assert_eq!(x, 60.0),
        other => panic!("expected a singularity, got {other:?}"),
    }
}

#[test]
fn spinors() {
    let d = radial();
    let l = with(&d, 1.0);
    for x in linspace(0.2, 4.0, 30) {
        let (up, down) = l.dirac_spinor(SpinorLevel::Ground, x).unwrap();
        assert_eq!(down, 0.0);
        assert_eq!(up, l.ground_state(x).unwrap());
        let (u0, d0) = d.dirac_spinor(SpinorLevel::Excited(0), x).unwrap();
        assert_eq!((u0, d0), (d.family().psi1(1, x).unwrap(), d.family().psi2(0, x).unwrap()));
        let (_, d1) = l.dirac_spinor(SpinorLevel::Excited(0), x).unwrap();
        assert_eq!(d1, d0);
    }
}

#[test]
fn concurrent_sweeps_are_deterministic() {
    use rayon::prelude::*;
    let d = radial();
    let lambdas = [0.05, 0.1, 1.0, 10.0, -1.1, -2.0];
    let xs: Vec<f64> = linspace(0.1, 5.0, 300).collect();
    let run = || -> Vec<Vec<f64>> {
        lambdas
            .par_iter()
            .map(|&lam| {
                let l = with(&d, lam);
                xs.par_iter().map(|&x| l.phi(x).unwrap()).collect()
            })
            .collect()
    };
    assert_eq!(run(), run());
}
