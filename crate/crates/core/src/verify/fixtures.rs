//! Printed closed forms for the `m = 1` members, encoded verbatim.
//!
//! Radial oscillator at `omega = 3, ell = 1`; Scarf-I at `A = 4, B = 2`;
//! GPT at `A = 2, B = 5`. These are independent of the engine and only use
//! elementary functions plus `erf`.

use std::f64::consts::PI;

use crate::specfun::erf;

pub mod radial {
    use super::*;

    pub fn phi(r: f64) -> f64 {
        let (w, l) = (3.0, 1.0);
        w * r / 2.0 - (l + 1.0) / r + 4.0 * w * r / ((1.0 + 2.0 * l + w * r * r) * (3.0 + 2.0 * l + w * r * r))
    }

    pub fn ground_state(r: f64) -> f64 {
        let (w, l) = (3.0f64, 1.0f64);
        let alpha = l + 0.5;
        // N^(alpha)_{0,1} = [omega^(alpha+1) / (2^alpha (alpha+1) Gamma(alpha))]^(1/2), Gamma(3/2) = sqrt(pi)/2
        let norm = (w.powf(alpha + 1.0) / (2f64.powf(alpha) * (alpha + 1.0) * 0.5 * PI.sqrt())).sqrt();
        norm * (3.0 + 2.0 * l + w * r * r) / (1.0 + 2.0 * l + w * r * r) * r.powf(1.0 + l) * (-w * r * r / 4.0).exp()
    }

    pub fn integral(r: f64) -> f64 {
        let r2 = r * r;
        -(-1.5 * r2).exp() * (6.0 / PI).sqrt() * r * (5.0 + 10.0 * r2 + 3.0 * r2 * r2) / (5.0 * (1.0 + r2))
            + erf(1.5f64.sqrt() * r)
    }

    /// The lambda family; `lambda = 0` and `-1` give the printed Pursey and
    /// Abraham-Moses forms.
    pub fn phi_lambda(lambda: f64, r: f64) -> f64 {
        let r2 = r * r;
        let sq = (6.0 / PI).sqrt();
        let e = (1.5 * r2).exp();
        let zeta = sq * r * (100.0 + 145.0 * r2 + 195.0 * r2.powi(2) + 117.0 * r2.powi(3) + 27.0 * r2.powi(4));
        let xi = 5.0 * e * (-20.0 - 9.0 * r2 + 12.0 * r2.powi(2) + 9.0 * r2.powi(3));
        let theta = sq * r * (5.0 + 3.0 * r2) * (5.0 + 10.0 * r2 + 3.0 * r2.powi(2));
        let upsilon = 5.0 * e * (5.0 + 8.0 * r2 + 3.0 * r2.powi(2));
        let t = lambda + erf(1.5f64.sqrt() * r);
        -(zeta + xi * t) / (2.0 * r * (theta - upsilon * t))
    }

    pub fn pursey(r: f64) -> f64 {
        phi_lambda(0.0, r)
    }

    pub fn abraham_moses(r: f64) -> f64 {
        phi_lambda(-1.0, r)
    }
}

pub mod scarf {
    use super::*;

    fn m(x: f64) -> f64 {
        let c = |k: f64| (k * x).cos();
        -5000996.0 * c(1.0) + 780528.0 * c(3.0) + 50540.0 * c(5.0) + 29003.0 * c(7.0) + 2345.0 * c(9.0)
            + 84.0 * c(11.0)
            + 3122840.0 * (2.0 * x).sin()
    }

    fn s(x: f64) -> f64 {
        -35.0 * (2.0 * x).cos() - 107.0 * x.sin() + 4.0 * (3.0 * x).sin()
    }

    fn g(x: f64) -> f64 {
        let s = |k: f64| (k * x).sin();
        -208840.0 * s(4.0) - 49335.0 * s(6.0) + 685.0 * s(8.0) + 177.0 * s(10.0)
    }

    fn h(x: f64) -> f64 {
        let (c, s) = (|k: f64| (k * x).cos(), |k: f64| (k * x).sin());
        59696.0 * c(3.0) + 11984.0 * c(5.0) - 854.0 * c(7.0) - 42.0 * c(9.0) + 3416.0 * s(4.0) + 5984.0 * s(6.0)
            + 141.0 * s(8.0)
    }

    fn d(x: f64) -> f64 {
        168.0 - 172.0 * x.sin() + 45.0 * (PI + 2.0 * x) * x.tan()
    }

    pub fn phi(x: f64) -> f64 {
        4.0 * x.tan() - 2.0 / x.cos() + 8.0 * x.cos() / (-71.0 + 8.0 * (2.0 * x).cos() + 64.0 * x.sin())
    }

    /// Printed ground state; only its magnitude is convention-free.
    pub fn ground_state(x: f64) -> f64 {
        let z = x.sin();
        let norm = 8.0 / 3.0 * (10.0 / (39.0 * PI)).sqrt();
        // P_1^(-5/2, 9/2)(z) and the X_1 polynomial at (3/2, 11/2)
        let p1 = |a: f64, b: f64| (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
        let (al, be) = (1.5, 5.5);
        let xhat = -((1.0 + al - 1.0) / (al + 1.0)) * p1(-2.0 - al, be);
        norm * (1.0 - z) * (1.0 + z).powi(3) / p1(-2.5, 4.5) * xhat
    }

    pub fn integral(x: f64) -> f64 {
        let (c, s) = (|k: f64| (k * x).cos(), |k: f64| (k * x).sin());
        (-114660.0 * (PI + 2.0 * x) + 244608.0 * c(1.0) + 59696.0 * c(3.0) + 11984.0 * c(5.0) - 854.0 * c(7.0)
            - 42.0 * c(9.0)
            + 65520.0 * (PI + 2.0 * x) * s(1.0)
            - 125216.0 * s(2.0)
            + 3416.0 * s(4.0)
            + 5984.0 * s(6.0)
            + 141.0 * s(8.0))
            / (32760.0 * PI * (-7.0 + 4.0 * x.sin()))
    }

    pub fn phi_lambda(lambda: f64, x: f64) -> f64 {
        let t = PI + 2.0 * x + 2.0 * PI * lambda;
        -2.0 * (g(x) + m(x) + 16380.0 * (137.0 + 2.0 * s(x)) * t) / x.cos()
            / ((-9.0 + 4.0 * x.sin())
                * (h(x) - 114660.0 * t + 1456.0 * d(x) * x.cos() + 131040.0 * PI * lambda * x.sin()))
    }

    pub fn pursey(x: f64) -> f64 {
        let t = PI + 2.0 * x;
        -2.0 * (g(x) + m(x) + 16380.0 * (137.0 + 2.0 * s(x)) * t) / x.cos()
            / ((h(x) - 114660.0 * t + 1456.0 * d(x) * x.cos()) * (-9.0 + 4.0 * x.sin()))
    }

    pub fn abraham_moses(x: f64) -> f64 {
        let t = PI - 2.0 * x;
        -2.0 * (g(x) + m(x) - 16380.0 * (137.0 + 2.0 * s(x)) * t) / x.cos()
            / ((-9.0 + 4.0 * x.sin()) * (h(x) + 114660.0 * t + 1456.0 * d(x) * x.cos() - 131040.0 * PI * x.sin()))
    }
}

pub mod gpt {
    fn q(r: f64) -> f64 {
        let c = |k: f64| (k * r).cosh();
        85.0 + 1103.0 * c(1.0) + 178.0 * c(2.0) + 19.0 * c(3.0) + c(4.0)
    }

    pub fn phi(r: f64) -> f64 {
        2.0 / r.tanh() - 5.0 / r.sinh()
            + 10.0 * r.sinh() * (1.0 / (10.0 * r.cosh() - 5.0) - 1.0 / (10.0 * r.cosh() - 3.0))
    }

    /// Printed ground state; only its magnitude is convention-free.
    pub fn ground_state(r: f64) -> f64 {
        let z = r.cosh();
        let norm = 21.0 * 5.5f64.sqrt();
        let p1 = |a: f64, b: f64| (a + 1.0) + (a + b + 2.0) * (z - 1.0) / 2.0;
        let (al, be) = (2.5, -7.5);
        let xhat = -((1.0 + al - 1.0) / (al + 1.0)) * p1(-2.0 - al, be);
        norm * (z - 1.0).powf(1.5) * (z + 1.0).powf(-3.5) / p1(-3.5, -8.5) * xhat
    }

    pub fn integral(r: f64) -> f64 {
        q(r) * (r / 2.0).cosh().powi(-6) * (r / 2.0).tanh().powi(7) / (-32.0 + 64.0 * r.cosh())
    }

    pub fn phi_lambda(lambda: f64, r: f64) -> f64 {
        let (ch, sh) = (r.cosh(), r.sinh());
        let s7 = (r / 2.0).sinh().powi(7);
        2.0 / r.tanh() - 5.0 / sh + 4.0 * sh / (3.0 + 4.0 * ch * (-4.0 + 5.0 * ch))
            + 198.0 * (3.0 - 10.0 * ch).powi(2) / sh * s7
                / ((-1.0 + 2.0 * ch) * (32.0 * lambda * (r / 2.0).cosh().powi(13) * (-1.0 + 2.0 * ch) + q(r) * s7))
    }

    pub fn pursey(r: f64) -> f64 {
        let s = |k: f64| (k * r).sinh();
        2.0 / (r / 2.0).tanh() + 10.0 * r.sinh() / (3.0 - 10.0 * r.cosh()) - 3.0 * (r / 2.0).tanh()
            + (1103.0 * s(1.0) + 356.0 * s(2.0) + 57.0 * s(3.0) + 4.0 * s(4.0)) / q(r)
    }

    /// The printed AM row is the lambda row at `lambda = -1`.
    pub fn abraham_moses(r: f64) -> f64 {
        phi_lambda(-1.0, r)
    }
}
