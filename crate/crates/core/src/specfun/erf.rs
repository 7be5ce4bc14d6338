use std::f64::consts::PI;

const SERIES_CUTOFF: f64 = 2.0;

/// Error function.
///
/// `|x| < 2`: the positive-term series
/// `erf(x) = 2/sqrt(pi) e^{-x^2} sum_k 2^k x^{2k+1} / (2k+1)!!`;
/// otherwise `1 - erfc(|x|)` from the Laplace continued fraction.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    let v = if ax < SERIES_CUTOFF {
        erf_series(ax)
    } else {
        1.0 - erfc_continued_fraction(ax)
    };
    v.copysign(x)
}

/// Complementary error function `1 - erf(x)`.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= SERIES_CUTOFF {
        erfc_continued_fraction(x)
    } else if x <= -SERIES_CUTOFF {
        2.0 - erfc_continued_fraction(-x)
    } else {
        1.0 - erf(x)
    }
}

fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut k = 0.0;
    while term > 1e-17 * sum {
        term *= 2.0 * x2 / (2.0 * k + 3.0);
        sum += term;
        k += 1.0;
    }
    2.0 / PI.sqrt() * (-x2).exp() * sum
}

/// `erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))`,
/// evaluated with the modified Lentz algorithm. Requires `x > 0`.
fn erfc_continued_fraction(x: f64) -> f64 {
    if x > 27.3 {
        return 0.0;
    }
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = 0.5 * f64::from(k);
        d = x + a * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = x + a / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (PI.sqrt() * f)
}
