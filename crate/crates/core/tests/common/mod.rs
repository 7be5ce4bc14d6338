//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use isodirac::specfun::{jacobi, jacobi_deriv, laguerre, laguerre_deriv, x_jacobi, x_laguerre};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

/// Generalized binomial coefficient `C(x, k)` for real `x`.
pub fn binom(x: f64, k: i32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (x - f64::from(j)) / f64::from(j + 1))
}

/// Explicit sum `L_n^(a)(z) = sum_k (-1)^k C(n+a, n-k) z^k / k!`, with the
/// sum of the absolute values of its terms.
pub fn laguerre_series(n: i32, a: f64, z: f64) -> (f64, f64) {
    if n < 0 {
        return (0.0, 0.0);
    }
    let mut fact = 1.0;
    let (mut sum, mut mag) = (0.0, 0.0);
    for k in 0..=n {
        if k > 0 {
            fact *= f64::from(k);
        }
        let t = (-1f64).powi(k) * binom(f64::from(n) + a, n - k) * z.powi(k) / fact;
        sum += t;
        mag += t.abs();
    }
    (sum, mag)
}

/// `P_n^(a,b)(z) = sum_s C(n+a, n-s) C(n+b, s) ((z-1)/2)^s ((z+1)/2)^(n-s)`.
pub fn jacobi_series(n: i32, a: f64, b: f64, z: f64) -> (f64, f64) {
    if n < 0 {
        return (0.0, 0.0);
    }
    let nf = f64::from(n);
    let (mut sum, mut mag) = (0.0, 0.0);
    for s in 0..=n {
        let t = binom(nf + a, n - s)
            * binom(nf + b, s)
            * (0.5 * (z - 1.0)).powi(s)
            * (0.5 * (z + 1.0)).powi(n - s);
        sum += t;
        mag += t.abs();
    }
    (sum, mag)
}

pub fn x_laguerre_oracle(n: i32, m: i32, a: f64, z: f64) -> f64 {
    laguerre_series(m, a, -z).0 * laguerre_series(n, a - 1.0, z).0
        + laguerre_series(m, a - 1.0, -z).0 * laguerre_series(n - 1, a, z).0
}

pub fn x_jacobi_oracle(n: i32, m: i32, a: f64, b: f64, z: f64) -> f64 {
    let nf = f64::from(n);
    let mf = f64::from(m);
    let c1 = (1.0 + a + b + nf) / (2.0 * (1.0 + a + nf));
    let c2 = (1.0 + a - mf) / (a + 1.0 + nf);
    let first = c1 * (z - 1.0) * jacobi_series(m, -a - 1.0, b - 1.0, z).0 * jacobi_series(n - 1, a + 2.0, b, z).0;
    let second = c2 * jacobi_series(m, -2.0 - a, b, z).0 * jacobi_series(n, a + 1.0, b - 1.0, z).0;
    (-1f64).powi(m) * (first + second)
}

/// Five-point central difference computed here rather than through the crate.
pub fn fd(f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h)
}

pub fn max_abs_diff(xs: impl Iterator<Item = f64>, mut f: impl FnMut(f64) -> (f64, f64)) -> (f64, f64) {
    let mut worst = (0.0, f64::NAN);
    for x in xs {
        let (a, b) = f(x);
        let d = (a - b).abs();
        if !(d <= worst.0) {
            worst = (d, x);
        }
    }
    worst
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
}

pub const SERIES_TOL: f64 = 1e-10;
pub const DERIV_TOL: f64 = 1e-8;

/// One randomized polynomial case.
#[derive(Debug, Clone, Copy)]
pub struct PolyCase {
    pub n: i32,
    pub a: f64,
    pub b: f64,
    pub z: f64,
    pub unit: f64,
}

pub fn poly_case() -> impl Strategy<Value = PolyCase> {
    (0i32..=10, 0.0f64..8.0, 0.0f64..8.0, -10.0f64..10.0, -1.0f64..1.0)
        .prop_filter("alpha strictly positive", |c| c.1 > 0.0)
        .prop_map(|(n, a, b, z, unit)| PolyCase { n, a, b, z, unit })
}

/// Recurrence against explicit sums, and analytic derivatives against
/// differencing. Derivative checks use moderate arguments where an absolute
/// tolerance is meaningful.
pub fn check_poly_case(c: PolyCase) -> Result<(), TestCaseError> {
    let (ls, lmag) = laguerre_series(c.n, c.a, c.z);
    let lr = laguerre(c.n, c.a, c.z);
    prop_assert!((lr - ls).abs() <= SERIES_TOL * lmag.max(1e-300), "laguerre {c:?}: {lr} vs {ls}");

    let (js, jmag) = jacobi_series(c.n, c.a, c.b, c.z);
    let jr = jacobi(c.n, c.a, c.b, c.z);
    prop_assert!((jr - js).abs() <= SERIES_TOL * jmag.max(1e-300), "jacobi {c:?}: {jr} vs {js}");

    let n = c.n.min(6);
    let zl = 2.0 + 2.0 * c.unit;
    let dl = laguerre_deriv(n, c.a, zl);
    let fl = fd(|t| laguerre(n, c.a, t), zl, 1e-3);
    let scale = 1.0 + laguerre_series(n, c.a, zl).1;
    prop_assert!((dl - fl).abs() <= DERIV_TOL * scale, "laguerre' {c:?}: {dl} vs {fl}");

    let zj = 0.95 * c.unit;
    let dj = jacobi_deriv(n, c.a, c.b, zj);
    let fj = fd(|t| jacobi(n, c.a, c.b, t), zj, 1e-3);
    let scale = 1.0 + jacobi_series(n, c.a, c.b, zj).1;
    prop_assert!((dj - fj).abs() <= DERIV_TOL * scale, "jacobi' {c:?}: {dj} vs {fj}");

    let m = 1 + (c.n % 3);
    let xl = x_laguerre(c.n as u32, m as u32, c.a + 1.0, zl);
    let xo = x_laguerre_oracle(c.n, m, c.a + 1.0, zl);
    prop_assert!((xl - xo).abs() <= SERIES_TOL * (1.0 + xo.abs()), "x_laguerre {c:?}: {xl} vs {xo}");

    if let Ok(xj) = x_jacobi(c.n as u32, m as u32, c.a, c.b + 1.0, zj) {
        let xo = x_jacobi_oracle(c.n, m, c.a, c.b + 1.0, zj);
        prop_assert!((xj - xo).abs() <= SERIES_TOL * (1.0 + xo.abs()), "x_jacobi {c:?}: {xj} vs {xo}");
    }
    Ok(())
}

/// Runs `cases` deterministic random cases; returns the number executed.
pub fn run_poly_sweep(cases: u32) -> Result<u32, String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let executed = std::cell::Cell::new(0u32);
    runner
        .run(&poly_case(), |c| {
            executed.set(executed.get() + 1);
            check_poly_case(c)
        })
        .map_err(|e| e.to_string())?;
    Ok(executed.get())
}
