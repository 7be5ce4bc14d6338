//! Adaptive Gauss-Kronrod (7/15) quadrature with global bisection.
//!
//! The 15-point rule never samples the interval endpoints, so integrands that
//! are singular or undefined exactly at a boundary are handled as long as
//! they are integrable.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Order of the underlying Kronrod rule.
pub const RULE_POINTS: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub err_est: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    pub max_intervals: usize,
}

impl QuadOptions {
    pub fn absolute(tol: f64) -> Self {
        Self { abs_tol: tol, rel_tol: 0.0, ..Self::default() }
    }

    pub fn relative(tol: f64) -> Self {
        Self { abs_tol: 0.0, rel_tol: tol, ..Self::default() }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self { abs_tol: 1e-12, rel_tol: 0.0, max_depth: 60, max_intervals: 20_000 }
    }
}

/// `int_a^b f(x) dx` to absolute tolerance `tol`; `b` may be `+inf`.
pub fn adaptive_quad(mut f: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadResult> {
    integrate(|x| Ok(f(x)), a, b, &QuadOptions::absolute(tol))
}

/// Fallible-integrand quadrature. Either limit may be infinite.
pub fn integrate(
    mut f: impl FnMut(f64) -> Result<f64>,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    integrate_dyn(&mut f, a, b, opts)
}

fn integrate_dyn(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    if a.is_nan() || b.is_nan() {
        return Err(Error::Grid("NaN integration limit".into()));
    }
    if a == b {
        return Ok(QuadResult { value: 0.0, err_est: 0.0 });
    }
    if a > b {
        let r = integrate_dyn(f, b, a, opts)?;
        return Ok(QuadResult { value: -r.value, ..r });
    }
    match (a.is_infinite(), b.is_infinite()) {
        (false, false) => integrate_finite(&mut *f, a, b, opts),
        (false, true) => integrate_finite(
            &mut |t: f64| {
                let s = 1.0 - t;
                Ok(f(a + t / s)? / (s * s))
            },
            0.0,
            1.0,
            opts,
        ),
        (true, false) => integrate_finite(
            &mut |t: f64| {
                let s = 1.0 - t;
                Ok(f(b - t / s)? / (s * s))
            },
            0.0,
            1.0,
            opts,
        ),
        (true, true) => {
            let half = QuadOptions { abs_tol: 0.5 * opts.abs_tol, ..*opts };
            let left = integrate_dyn(f, f64::NEG_INFINITY, 0.0, &half)?;
            let right = integrate_dyn(f, 0.0, f64::INFINITY, &half)?;
            Ok(QuadResult { value: left.value + right.value, err_est: left.err_est + right.err_est })
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn kronrod(f: &mut dyn FnMut(f64) -> Result<f64>, a: f64, b: f64, depth: u32) -> Result<Segment> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut eval = |x: f64| -> Result<f64> {
        let v = f(x)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Singularity { what: "integrand", x, value: v })
        }
    };
    let fc = eval(c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = eval(c - dx)? + eval(c + dx)?;
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Ok(Segment { a, b, value: k * h, err: ((k - g) * h).abs(), depth })
}

fn integrate_finite(
    f: &mut dyn FnMut(f64) -> Result<f64>,
    a: f64,
    b: f64,
    opts: &QuadOptions,
) -> Result<QuadResult> {
    let mut heap = BinaryHeap::new();
    let first = kronrod(f, a, b, 0)?;
    let mut value = first.value;
    let mut err = first.err;
    heap.push(first);
    while err > opts.target(value) {
        let worst = heap.pop().expect("heap holds at least one segment");
        if worst.depth >= opts.max_depth || heap.len() + 2 > opts.max_intervals {
            return Err(Error::Quadrature { a, b, err_est: err, tol: opts.target(value) });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = kronrod(f, worst.a, mid, worst.depth + 1)?;
        let right = kronrod(f, mid, worst.b, worst.depth + 1)?;
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
        // running sums drift; resum occasionally
        if heap.len() % 64 == 0 {
            value = heap.iter().map(|s| s.value).sum();
            err = heap.iter().map(|s| s.err).sum();
        }
    }
    let value = heap.iter().map(|s| s.value).sum();
    let err_est = heap.iter().map(|s| s.err).sum();
    Ok(QuadResult { value, err_est })
}
