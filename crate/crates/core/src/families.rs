//! Rationally extended scalar-potential families.
//!
//! Each family supplies a superpotential `phi = phi_con + phi_rat`, the
//! partner potentials `V1 = phi^2 - phi'` and `V2 = phi^2 + phi'`, their
//! bound states in terms of exceptional Laguerre/Jacobi polynomials, and the
//! analytic spectra.
//!
//! All three families share one structure. With a coordinate map `z(x)`, a
//! weight `w(x) = exp(-int phi_con)` and a nodeless denominator polynomial
//! `D(z)`, the sector-1 states are `Psi_n = N_n w(x) Q_n(z) / D(z)` where
//! `Q_n` is the exceptional polynomial of index `n + m`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, LN_2};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::numerics::{integrate, GridSpec, QuadOptions};
use crate::specfun::{
    jacobi, jacobi_deriv, jacobi_deriv_scaled, jacobi_scaled, laguerre, x_jacobi, x_jacobi_deriv, x_jacobi_scaled,
    x_laguerre, x_laguerre_deriv,
};

/// Beyond this `cosh r` the GPT polynomials are evaluated divided by their
/// leading power, so the far tail neither overflows nor turns into NaN.
const LARGE_Z: f64 = 1e8;

/// Conventional potential underlying a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Potential {
    /// `phi_con = omega r / 2 - (ell + 1) / r` on `(0, inf)`.
    RadialOscillator { omega: f64, ell: f64 },
    /// `phi_con = A tan x - B sec x` on `(-pi/2, pi/2)`.
    ScarfI { a: f64, b: f64 },
    /// `phi_con = A coth r - B cosech r` on `(0, inf)`.
    Gpt { a: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FamilyParams {
    pub potential: Potential,
    /// Exceptional extension order, `m >= 1`.
    pub m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Coordinate {
    R,
    X,
}

/// Open physical domain of a family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DomainSpec {
    pub lower: f64,
    /// `f64::INFINITY` for half-line families.
    pub upper: f64,
    pub coordinate: Coordinate,
}

impl DomainSpec {
    pub fn contains(&self, x: f64) -> bool {
        x > self.lower && x < self.upper
    }

    /// Domain error unless `x` lies strictly inside.
    pub fn check_point(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain { x, lower: self.lower, upper: self.upper })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Sector {
    One,
    Two,
}

impl Sector {
    pub fn index(self) -> u8 {
        match self {
            Sector::One => 1,
            Sector::Two => 2,
        }
    }
}

/// One bound state: index, Schrodinger-like eigenvalue `E = eps^2` and the
/// positive Dirac energy `eps = +sqrt(E)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralLine {
    pub n: usize,
    pub energy: f64,
    pub epsilon: f64,
    pub sector: Sector,
}

impl FamilyParams {
    pub fn new(potential: Potential, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("extension order m must be >= 1".into()));
        }
        match potential {
            Potential::RadialOscillator { omega, ell } => {
                if !(omega > 0.0 && omega.is_finite()) {
                    return Err(Error::InvalidParams(format!("radial oscillator needs omega > 0, got {omega}")));
                }
                if !(ell > 0.0 && ell.is_finite()) {
                    return Err(Error::InvalidParams(format!("radial oscillator needs ell > 0, got {ell}")));
                }
            }
            Potential::ScarfI { a, b } => {
                if !(a.is_finite() && b > 0.0 && b < a - 1.0) {
                    return Err(Error::InvalidParams(format!(
                        "Scarf-I needs 0 < B < A - 1, got A = {a}, B = {b}"
                    )));
                }
            }
            Potential::Gpt { a, b } => {
                if !(b.is_finite() && a > 0.0 && b > a + 1.0) {
                    return Err(Error::InvalidParams(format!(
                        "GPT needs B > A + 1 > 1, got A = {a}, B = {b}"
                    )));
                }
            }
        }
        Ok(Self { potential, m })
    }

    pub fn radial(omega: f64, ell: f64, m: u32) -> Result<Self> {
        Self::new(Potential::RadialOscillator { omega, ell }, m)
    }

    pub fn scarf_i(a: f64, b: f64, m: u32) -> Result<Self> {
        Self::new(Potential::ScarfI { a, b }, m)
    }

    pub fn gpt(a: f64, b: f64, m: u32) -> Result<Self> {
        Self::new(Potential::Gpt { a, b }, m)
    }

    pub fn domain(&self) -> DomainSpec {
        match self.potential {
            Potential::RadialOscillator { .. } => {
                DomainSpec { lower: 0.0, upper: f64::INFINITY, coordinate: Coordinate::R }
            }
            Potential::ScarfI { .. } => {
                DomainSpec { lower: -FRAC_PI_2, upper: FRAC_PI_2, coordinate: Coordinate::X }
            }
            Potential::Gpt { .. } => {
                DomainSpec { lower: 0.0, upper: f64::INFINITY, coordinate: Coordinate::R }
            }
        }
    }

    /// Number of bound states in a sector; `None` when the spectrum is infinite.
    pub fn bound_state_count(&self, sector: Sector) -> Option<usize> {
        match self.potential {
            Potential::Gpt { a, .. } => {
                // E_n = A^2 - (A - n)^2 is bound while n < A
                let sector_one = a.ceil() as usize;
                Some(match sector {
                    Sector::One => sector_one,
                    Sector::Two => sector_one - 1,
                })
            }
            _ => None,
        }
    }

    /// Analytic eigenvalue, or `None` if the level is not bound.
    pub fn energy(&self, sector: Sector, n: usize) -> Option<f64> {
        if let Some(count) = self.bound_state_count(sector) {
            if n >= count {
                return None;
            }
        }
        let k = match sector {
            Sector::One => n as f64,
            Sector::Two => (n + 1) as f64,
        };
        Some(match self.potential {
            Potential::RadialOscillator { omega, .. } => 2.0 * k * omega,
            Potential::ScarfI { a, .. } => (a + k) * (a + k) - a * a,
            Potential::Gpt { a, .. } => a * a - (a - k) * (a - k),
        })
    }

    /// Up to `count` analytic levels; shorter when the spectrum is finite.
    pub fn spectrum(&self, sector: Sector, count: usize) -> Vec<SpectralLine> {
        (0..count)
            .map_while(|n| {
                self.energy(sector, n)
                    .map(|energy| SpectralLine { n, energy, epsilon: energy.sqrt(), sector })
            })
            .collect()
    }

    fn jacobi_parameters(&self) -> (f64, f64) {
        match self.potential {
            Potential::ScarfI { a, b } => (a - b - 0.5, a + b - 0.5),
            Potential::Gpt { a, b } => (-a + b - 0.5, -a - b - 0.5),
            Potential::RadialOscillator { ell, .. } => (ell + 0.5, 0.0),
        }
    }

    /// `(z, z', z'')` of the coordinate map.
    fn coordinate(&self, x: f64) -> (f64, f64, f64) {
        match self.potential {
            Potential::RadialOscillator { omega, .. } => (0.5 * omega * x * x, omega * x, omega),
            Potential::ScarfI { .. } => (x.sin(), x.cos(), -x.sin()),
            Potential::Gpt { .. } => (x.cosh(), x.sinh(), x.cosh()),
        }
    }

    fn conventional_phi(&self, x: f64) -> (f64, f64) {
        match self.potential {
            Potential::RadialOscillator { omega, ell } => {
                (0.5 * omega * x - (ell + 1.0) / x, 0.5 * omega + (ell + 1.0) / (x * x))
            }
            Potential::ScarfI { a, b } => {
                let (sec, tan) = (1.0 / x.cos(), x.tan());
                (a * tan - b * sec, a * sec * sec - b * sec * tan)
            }
            Potential::Gpt { a, b } => {
                let (csch, coth) = (1.0 / x.sinh(), 1.0 / x.tanh());
                (a * coth - b * csch, -a * csch * csch + b * csch * coth)
            }
        }
    }

    fn rational_phi(&self, x: f64) -> Result<(f64, f64)> {
        let m = self.m as i32;
        let (z, dz, zpp) = self.coordinate(x);
        let ratio = |num: f64, num_z: f64, den: f64, den_z: f64| -> Result<(f64, f64)> {
            if den == 0.0 || !den.is_finite() {
                return Err(Error::Singularity { what: "rational superpotential denominator", x, value: den });
            }
            Ok((num / den, (num_z * den - num * den_z) / (den * den)))
        };
        match self.potential {
            // the rational term falls off like 1/r^3; past this it is below
            // one ulp of the conventional part and z itself may overflow
            Potential::RadialOscillator { .. } if z > 1e150 => Ok((0.0, 0.0)),
            Potential::RadialOscillator { omega, ell } => {
                let al = ell + 0.5;
                // d/dz L_k^(a)(-z) = L_{k-1}^(a+1)(-z)
                let lm = |k: i32, a: f64| laguerre(k, a, -z);
                let (r1, r1z) = ratio(lm(m - 1, al), lm(m - 2, al + 1.0), lm(m, al - 1.0), lm(m - 1, al))?;
                let (r2, r2z) =
                    ratio(lm(m - 1, al + 1.0), lm(m - 2, al + 2.0), lm(m, al), lm(m - 1, al + 1.0))?;
                Ok((omega * x * (r1 - r2), omega * (r1 - r2) + dz * dz * (r1z - r2z)))
            }
            Potential::Gpt { .. } if z > LARGE_Z => {
                // ratios of degree m-1 to degree m carry one power of 1/z,
                // which combines with z' = sinh r into tanh r
                let (al, be) = self.jacobi_parameters();
                let c = -0.5 * (be - al + f64::from(self.m) - 1.0);
                let scaled = |k: i32, a: f64, b: f64| (jacobi_scaled(k, a, b, z), jacobi_deriv_scaled(k, a, b, z));
                let ((n1, n1z), (d1, d1z)) = (scaled(m - 1, -al - 1.0, be + 1.0), scaled(m, -al - 2.0, be));
                let ((n2, n2z), (d2, d2z)) = (scaled(m - 1, -al, be), scaled(m, -al - 1.0, be - 1.0));
                let (r1, r1z) = ratio(n1, n1z, d1, d1z)?;
                let (r2, r2z) = ratio(n2, n2z, d2, d2z)?;
                let t = x.tanh();
                Ok((c * t * (r1 - r2), c * (r1 - r2) + c * t * t * (r1z - r2z)))
            }
            Potential::ScarfI { .. } | Potential::Gpt { .. } => {
                let (al, be) = self.jacobi_parameters();
                let c = -0.5 * (be - al + f64::from(self.m) - 1.0);
                let p = |a: f64, b: f64| (jacobi(m, a, b, z), jacobi_deriv(m, a, b, z));
                let q = |a: f64, b: f64| (jacobi(m - 1, a, b, z), jacobi_deriv(m - 1, a, b, z));
                let ((n1, n1z), (d1, d1z)) = (q(-al - 1.0, be + 1.0), p(-al - 2.0, be));
                let ((n2, n2z), (d2, d2z)) = (q(-al, be), p(-al - 1.0, be - 1.0));
                let (r1, r1z) = ratio(n1, n1z, d1, d1z)?;
                let (r2, r2z) = ratio(n2, n2z, d2, d2z)?;
                Ok((c * dz * (r1 - r2), c * zpp * (r1 - r2) + c * dz * dz * (r1z - r2z)))
            }
        }
    }

    /// `(phi, phi')` without the domain check.
    fn phi_unchecked(&self, x: f64) -> Result<(f64, f64)> {
        let (pc, dpc) = self.conventional_phi(x);
        let (pr, dpr) = self.rational_phi(x)?;
        Ok((pc + pr, dpc + dpr))
    }

    /// `ln w(x)` with `w = exp(-int phi_con)`; `shift` raises the radial
    /// Laguerre parameter (used for the sector-2 closed form).
    fn ln_weight(&self, x: f64, shift: f64) -> f64 {
        match self.potential {
            Potential::RadialOscillator { omega, ell } => {
                (ell + 1.0 + shift) * x.ln() - 0.25 * omega * x * x
            }
            Potential::ScarfI { a, b } => {
                // 1 -+ sin x = 2 sin^2((pi/2 -+ x)/2), accurate near either wall
                let one_minus = 2.0 * (0.5 * (FRAC_PI_2 - x)).sin().powi(2);
                let one_plus = 2.0 * (0.5 * (FRAC_PI_2 + x)).sin().powi(2);
                0.5 * (a - b) * one_minus.ln() + 0.5 * (a + b) * one_plus.ln()
            }
            Potential::Gpt { a, b } => {
                // z - 1 = 2 sinh^2(r/2), z + 1 = 2 cosh^2(r/2)
                let e = (-x).exp();
                let ln_zm1 = x + 2.0 * (-e).ln_1p() - LN_2;
                let ln_zp1 = x + 2.0 * e.ln_1p() - LN_2;
                0.5 * (b - a) * ln_zm1 - 0.5 * (b + a) * ln_zp1
            }
        }
    }

    /// Exceptional numerator `Q_n(z)` and its z-derivative.
    fn numerator(&self, n: u32, z: f64, shift: f64) -> Result<(f64, f64)> {
        match self.potential {
            Potential::RadialOscillator { ell, .. } => {
                let al = ell + 0.5 + shift;
                Ok((x_laguerre(n, self.m, al, z), x_laguerre_deriv(n, self.m, al, z)))
            }
            _ => {
                let (al, be) = self.jacobi_parameters();
                Ok((x_jacobi(n, self.m, al, be, z)?, x_jacobi_deriv(n, self.m, al, be, z)?))
            }
        }
    }

    /// Nodeless denominator `D(z)` and its z-derivative.
    fn denominator(&self, z: f64, shift: f64) -> (f64, f64) {
        let m = self.m as i32;
        match self.potential {
            Potential::RadialOscillator { ell, .. } => {
                let al = ell + 0.5 + shift;
                (laguerre(m, al - 1.0, -z), laguerre(m - 1, al, -z))
            }
            _ => {
                let (al, be) = self.jacobi_parameters();
                (jacobi(m, -al - 1.0, be - 1.0, z), jacobi_deriv(m, -al - 1.0, be - 1.0, z))
            }
        }
    }

    /// Unnormalized `(Psi, Psi')` of state `n`.
    fn raw_state(&self, n: u32, x: f64, shift: f64) -> Result<(f64, f64)> {
        let (z, dz, _) = self.coordinate(x);
        let dlnw = match self.potential {
            Potential::RadialOscillator { omega, ell } => (ell + 1.0 + shift) / x - 0.5 * omega * x,
            _ => -self.conventional_phi(x).0,
        };
        if matches!(self.potential, Potential::Gpt { .. }) && z > LARGE_Z {
            return self.raw_state_far(n, x, z, dlnw);
        }
        let w = self.ln_weight(x, shift).exp();
        if w == 0.0 {
            return Ok((0.0, 0.0));
        }
        let (num, num_z) = self.numerator(n, z, shift)?;
        let (den, den_z) = self.denominator(z, shift);
        if den == 0.0 {
            return Err(Error::Singularity { what: "wavefunction denominator", x, value: den });
        }
        let q = num / den;
        let dq = dz * (num_z * den - num * den_z) / (den * den);
        Ok((w * q, w * (dlnw * q + dq)))
    }

    /// GPT tail: `w z^n Q~/D~` assembled in log space.
    fn raw_state_far(&self, n: u32, x: f64, z: f64, dlnw: f64) -> Result<(f64, f64)> {
        let (al, be) = self.jacobi_parameters();
        let m = self.m as i32;
        let (num, num_z) = x_jacobi_scaled(n, self.m, al, be, z)?;
        let (den, den_z) = (jacobi_scaled(m, -al - 1.0, be - 1.0, z), jacobi_deriv_scaled(m, -al - 1.0, be - 1.0, z));
        if den == 0.0 || num == 0.0 {
            return Ok((0.0, 0.0));
        }
        // ln cosh r without overflowing cosh
        let ln_z = x - LN_2 + (-2.0 * x).exp().ln_1p();
        let ln_abs = self.ln_weight(x, 0.0) + f64::from(n) * ln_z + num.abs().ln() - den.abs().ln();
        let value = (num.signum() * den.signum()) * ln_abs.exp();
        // num_z / num = num~' / (z num~), and z'/z = tanh r
        let dlnq = x.tanh() * (num_z / num - den_z / den);
        Ok((value, value * (dlnw + dlnq)))
    }

    /// Sign of the polynomial factor at the lower wall.
    fn lower_wall_sign(&self, n: u32, shift: f64) -> Result<f64> {
        let z0 = match self.potential {
            Potential::RadialOscillator { .. } => 0.0,
            Potential::ScarfI { .. } => -1.0,
            Potential::Gpt { .. } => 1.0,
        };
        let mut eps = 0.0;
        for _ in 0..8 {
            let z = z0 + eps;
            let (num, _) = self.numerator(n, z, shift)?;
            let (den, _) = self.denominator(z, shift);
            let q = num / den;
            if q != 0.0 && q.is_finite() {
                return Ok(q.signum());
            }
            eps = if eps == 0.0 { 1e-6 } else { eps * 10.0 };
        }
        Err(Error::InvalidParams(format!("state {n} vanishes identically near the lower wall")))
    }

    fn check_nodeless(&self) -> Result<()> {
        let (al, be) = self.jacobi_parameters();
        let m = self.m as i32;
        let zs: Vec<f64> = match self.potential {
            // L_m^(a)(-z) has positive coefficients for a > -1
            Potential::RadialOscillator { .. } => return Ok(()),
            Potential::ScarfI { .. } => (0..=4000).map(|i| -1.0 + 2.0 * f64::from(i) / 4000.0).collect(),
            Potential::Gpt { .. } => (0..4000)
                .map(|i| {
                    let s = f64::from(i) / 4000.0;
                    1.0 + (s / (1.0 - s)).powi(2)
                })
                .collect(),
        };
        if (1.0 + al - f64::from(self.m)).abs() < 1e-12 {
            return Err(Error::InvalidParams("ground state vanishes identically (alpha = m - 1)".into()));
        }
        for (label, a, b) in [("P_m^(-a-1,b-1)", -al - 1.0, be - 1.0), ("P_m^(-a-2,b)", -al - 2.0, be)] {
            let mut sign = 0.0;
            for &z in &zs {
                let v = jacobi(m, a, b, z);
                if v == 0.0 || (sign != 0.0 && v.signum() != sign) {
                    return Err(Error::InvalidParams(format!(
                        "denominator {label} has a zero near z = {z}; parameters give a singular potential"
                    )));
                }
                sign = v.signum();
            }
        }
        Ok(())
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.potential {
            Potential::RadialOscillator { omega, ell } => {
                write!(f, "radial oscillator (omega = {omega}, ell = {ell}, m = {})", self.m)
            }
            Potential::ScarfI { a, b } => write!(f, "Scarf-I (A = {a}, B = {b}, m = {})", self.m),
            Potential::Gpt { a, b } => write!(f, "GPT (A = {a}, B = {b}, m = {})", self.m),
        }
    }
}

#[derive(Debug)]
enum Repr {
    /// `scale * raw_state(n, x, shift)`.
    Closed { scale: f64, shift: f64 },
    /// `(Psi1' + phi Psi1) / eps` for the sector-1 state one level up.
    Intertwined { upper: Arc<BoundState>, epsilon: f64 },
}

/// A normalized analytic bound state.
#[derive(Debug)]
pub struct BoundState {
    params: FamilyParams,
    sector: Sector,
    n: usize,
    energy: f64,
    repr: Repr,
}

impl BoundState {
    pub fn sector(&self) -> Sector {
        self.sector
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        Ok(self.value_and_derivative(x)?.0)
    }

    pub fn derivative(&self, x: f64) -> Result<f64> {
        Ok(self.value_and_derivative(x)?.1)
    }

    pub fn value_and_derivative(&self, x: f64) -> Result<(f64, f64)> {
        self.params.domain().check_point(x)?;
        self.eval_unchecked(x)
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> Result<(f64, f64)> {
        match &self.repr {
            Repr::Closed { scale, shift } => {
                let (v, d) = self.params.raw_state(self.n_poly(), x, *shift)?;
                Ok((scale * v, scale * d))
            }
            Repr::Intertwined { upper, epsilon } => {
                let (psi, dpsi) = upper.eval_unchecked(x)?;
                let (phi, _) = self.params.phi_unchecked(x)?;
                // (A psi)' = (phi^2 - E) psi + phi psi' on an eigenstate of V1
                let value = (dpsi + phi * psi) / epsilon;
                let deriv = ((phi * phi - upper.energy) * psi + phi * dpsi) / epsilon;
                Ok((value, deriv))
            }
        }
    }

    fn n_poly(&self) -> u32 {
        self.n as u32
    }
}

/// A family with its cached normalized bound states.
#[derive(Debug)]
pub struct Family {
    params: FamilyParams,
    states: RwLock<BTreeMap<(Sector, usize), Arc<BoundState>>>,
}

impl Clone for Family {
    fn clone(&self) -> Self {
        Self { params: self.params, states: RwLock::new(self.states.read().expect("state cache").clone()) }
    }
}

impl Family {
    pub fn new(params: FamilyParams) -> Result<Self> {
        let params = FamilyParams::new(params.potential, params.m)?;
        params.check_nodeless()?;
        Ok(Self { params, states: RwLock::new(BTreeMap::new()) })
    }

    pub fn params(&self) -> &FamilyParams {
        &self.params
    }

    pub fn domain(&self) -> DomainSpec {
        self.params.domain()
    }

    /// Extended superpotential `phi_con + phi_rat`.
    pub fn phi(&self, x: f64) -> Result<f64> {
        Ok(self.phi_with_derivative(x)?.0)
    }

    /// `(phi, phi')`, the derivative assembled analytically.
    pub fn phi_with_derivative(&self, x: f64) -> Result<(f64, f64)> {
        self.domain().check_point(x)?;
        self.params.phi_unchecked(x)
    }

    /// `(V1, V2) = (phi^2 - phi', phi^2 + phi')`.
    pub fn partner_potentials(&self, x: f64) -> Result<(f64, f64)> {
        let (p, dp) = self.phi_with_derivative(x)?;
        Ok((p * p - dp, p * p + dp))
    }

    pub fn spectrum(&self, sector: Sector, count: usize) -> Vec<SpectralLine> {
        self.params.spectrum(sector, count)
    }

    /// Normalized bound state `n` of `sector`, computed once and cached.
    pub fn state(&self, sector: Sector, n: usize) -> Result<Arc<BoundState>> {
        if let Some(s) = self.states.read().expect("state cache").get(&(sector, n)) {
            return Ok(Arc::clone(s));
        }
        let state = Arc::new(self.build_state(sector, n)?);
        let mut cache = self.states.write().expect("state cache");
        Ok(Arc::clone(cache.entry((sector, n)).or_insert(state)))
    }

    pub fn psi1(&self, n: usize, x: f64) -> Result<f64> {
        self.state(Sector::One, n)?.value(x)
    }

    pub fn psi2(&self, n: usize, x: f64) -> Result<f64> {
        self.state(Sector::Two, n)?.value(x)
    }

    fn build_state(&self, sector: Sector, n: usize) -> Result<BoundState> {
        let energy = self.params.energy(sector, n).ok_or(Error::Index {
            n,
            available: self.params.bound_state_count(sector).unwrap_or(usize::MAX),
        })?;
        let p = self.params;
        let repr = match (sector, p.potential) {
            (Sector::One, Potential::RadialOscillator { omega, ell }) => {
                let scale = radial_norm(omega, ell + 0.5, n, p.m) * p.lower_wall_sign(n as u32, 0.0)?;
                Repr::Closed { scale, shift: 0.0 }
            }
            (Sector::Two, Potential::RadialOscillator { omega, ell }) => {
                // closed form with alpha -> alpha + 1; the overall minus sign
                // makes it equal to A Psi1_{n+1} / eps
                let scale = -radial_norm(omega, ell + 1.5, n, p.m) * p.lower_wall_sign(n as u32, 1.0)?;
                Repr::Closed { scale, shift: 1.0 }
            }
            (Sector::One, _) => {
                let sign = p.lower_wall_sign(n as u32, 0.0)?;
                let far = self.far_cutoff(|x| p.raw_state(n as u32, x, 0.0).map(|v| v.0));
                let norm2 = integrate(
                    |x| p.raw_state(n as u32, x, 0.0).map(|v| v.0 * v.0),
                    self.domain().lower,
                    far,
                    &QuadOptions::relative(1e-13),
                )?;
                Repr::Closed { scale: sign / norm2.value.sqrt(), shift: 0.0 }
            }
            (Sector::Two, _) => {
                let upper = self.state(Sector::One, n + 1)?;
                Repr::Intertwined { epsilon: upper.energy.sqrt(), upper }
            }
        };
        Ok(BoundState { params: p, sector, n, energy, repr })
    }

    /// `int Psi^2` over the whole domain.
    pub fn norm_of_state(&self, state: &BoundState) -> Result<f64> {
        let far = self.far_cutoff(|x| state.eval_unchecked(x).map(|v| v.0));
        let r = integrate(
            |x| state.eval_unchecked(x).map(|v| v.0 * v.0),
            self.domain().lower,
            far,
            &QuadOptions::relative(1e-12),
        )?;
        Ok(r.value)
    }

    /// Point beyond which `|f|` has dropped below `1e-20` of its running
    /// maximum; the domain's upper wall for bounded domains.
    pub(crate) fn far_cutoff(&self, f: impl Fn(f64) -> Result<f64>) -> f64 {
        let dom = self.domain();
        if dom.upper.is_finite() {
            return dom.upper;
        }
        let mut x = match self.params.potential {
            Potential::RadialOscillator { omega, .. } => (1.0 / omega).sqrt(),
            _ => 0.5,
        };
        let mut peak = 0.0f64;
        let mut last_good = x;
        for _ in 0..400 {
            match f(x) {
                Ok(v) if v.is_finite() => {
                    let a = v.abs();
                    peak = peak.max(a);
                    last_good = x;
                    if peak > 0.0 && a < 1e-20 * peak {
                        return x;
                    }
                }
                _ => return last_good,
            }
            x *= 1.05;
        }
        last_good
    }

    /// Default eigen/table grid, sized so that the ground state has decayed
    /// below `1e-12` of its maximum at the upper cut.
    pub fn default_grid(&self) -> Result<GridSpec> {
        let (mut lo, mut hi, mut n) = match self.params.potential {
            Potential::RadialOscillator { omega, .. } => {
                let s = (3.0 / omega).sqrt();
                (1e-4 * s, 8.0 * s, 4000usize)
            }
            Potential::ScarfI { .. } => (-FRAC_PI_2 + 1e-6, FRAC_PI_2 - 1e-6, 4000),
            Potential::Gpt { a, .. } => {
                let top = self.params.bound_state_count(Sector::One).unwrap_or(1) as f64 - 1.0;
                let gap = (a - top).max(0.25);
                (1e-4, 25.0 / gap, (6000.0 / gap).ceil() as usize)
            }
        };
        let ground = self.state(Sector::One, 0)?;
        for _ in 0..20 {
            let grid = GridSpec::new(lo, hi, n)?;
            let mut peak = 0.0f64;
            for x in grid.nodes() {
                peak = peak.max(ground.value(x)?.abs());
            }
            // bounded domains end at a hard wall where every state vanishes
            if self.domain().upper.is_finite() || ground.value(hi)?.abs() < 1e-12 * peak {
                return Ok(grid);
            }
            hi *= 1.25;
            n = (n as f64 * 1.25).ceil() as usize;
            lo = lo.min(hi);
        }
        Err(Error::Grid(format!("could not size a grid for {}", self.params)))
    }

    /// Sub-window of the default grid where the ground state exceeds `1e-6`
    /// of its maximum; identity checks sample inside it.
    pub fn sampling_window(&self) -> Result<(f64, f64)> {
        let grid = self.default_grid()?;
        let ground = self.state(Sector::One, 0)?;
        let values: Vec<(f64, f64)> =
            grid.nodes().map(|x| ground.value(x).map(|v| (x, v.abs()))).collect::<Result<_>>()?;
        let peak = values.iter().fold(0.0f64, |m, &(_, v)| m.max(v));
        let inside: Vec<f64> = values.iter().filter(|&&(_, v)| v >= 1e-6 * peak).map(|&(x, _)| x).collect();
        Ok((inside[0], inside[inside.len() - 1]))
    }
}

/// `N^(a)_{n,m} = [n! omega^(a+1) / (2^a (a+n+m) Gamma(a+n))]^(1/2)`.
fn radial_norm(omega: f64, alpha: f64, n: usize, m: u32) -> f64 {
    let nf = n as f64;
    let ln_n2 = ln_gamma(nf + 1.0) + (alpha + 1.0) * omega.ln()
        - alpha * LN_2
        - (alpha + nf + f64::from(m)).ln()
        - ln_gamma(alpha + nf);
    (0.5 * ln_n2).exp()
}
