//! The one-parameter isospectral deformation.
//!
//! With `I(x)` the cumulative probability of the normalized sector-1 ground
//! state, the deformed superpotential is `phi + d/dx ln D(x)` where
//!
//! | deformation          | `D(x)`            |
//! |----------------------|-------------------|
//! | `lambda > 0`         | `I(x) + lambda`   |
//! | `lambda < -1`        | `I(x) + lambda`   |
//! | Pursey (`lambda=0`)  | `I(x)`            |
//! | Abraham-Moses (`-1`) | `I(x) - 1`        |
//!
//! `I - 1` and `I + lambda` for `lambda < -1` are formed from the backward
//! integral `J = 1 - I` so that the upper tail keeps full relative precision.
//! `I'` is always the analytic `Psi0^2`.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{BoundState, Family, Sector, SpectralLine};
use crate::numerics::{integrate, GridSpec, QuadOptions};

/// Denominators smaller than this fraction of `I'` are reported as singular.
pub const SINGULARITY_RATIO: f64 = 1e-14;

const TABLE_QUAD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "lambda", rename_all = "snake_case")]
pub enum Deformation {
    Generic(f64),
    Pursey,
    AbrahamMoses,
    Undeformed,
}

impl Deformation {
    /// A generic member; `lambda` must be `> 0` or `< -1`.
    pub fn generic(lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda.is_infinite() {
            return Err(Error::InvalidDeformation(format!("lambda = {lambda} is not a finite real")));
        }
        if lambda > 0.0 || lambda < -1.0 {
            Ok(Deformation::Generic(lambda))
        } else {
            Err(Error::InvalidDeformation(format!(
                "lambda = {lambda} rejected: lambda must be > 0 or < -1 \
                 (for lambda in [-1, 0] the denominator I(x)+lambda vanishes in-domain; \
                 use the Pursey or Abraham-Moses limits for 0 and -1)"
            )))
        }
    }

    /// Maps the limit values `0`, `-1` and `+-inf` to their symbolic kinds.
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if lambda == 0.0 {
            Ok(Deformation::Pursey)
        } else if lambda == -1.0 {
            Ok(Deformation::AbrahamMoses)
        } else if lambda.is_infinite() {
            Ok(Deformation::Undeformed)
        } else {
            Self::generic(lambda)
        }
    }

    pub fn deletes_ground_state(&self) -> bool {
        matches!(self, Deformation::Pursey | Deformation::AbrahamMoses)
    }

    /// CSV/report label: `lambda=<v>`, `pursey`, `am` or `undeformed`.
    pub fn label(&self) -> String {
        match self {
            Deformation::Generic(l) => format!("lambda={l}"),
            Deformation::Pursey => "pursey".into(),
            Deformation::AbrahamMoses => "am".into(),
            Deformation::Undeformed => "undeformed".into(),
        }
    }
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Deformation::Generic(l) => write!(f, "lambda = {l}"),
            Deformation::Pursey => f.write_str("Pursey (lambda -> 0)"),
            Deformation::AbrahamMoses => f.write_str("Abraham-Moses (lambda -> -1)"),
            Deformation::Undeformed => f.write_str("undeformed (lambda -> inf)"),
        }
    }
}

/// Forward and backward cumulative integrals of `Psi0^2` tabulated on a grid.
///
/// Off-node values add a local quadrature from the nearest tabulated node, so
/// the table is exact to quadrature tolerance everywhere rather than
/// interpolated.
#[derive(Debug)]
pub struct IntegralTable {
    grid: GridSpec,
    ground: Arc<BoundState>,
    family: Family,
    forward: Vec<f64>,
    backward: Vec<f64>,
    err_est: f64,
}

impl IntegralTable {
    pub fn compute(family: &Family, grid: &GridSpec) -> Result<Self> {
        let dom = family.domain();
        if !(dom.contains(grid.x_min()) && dom.contains(grid.x_max())) {
            return Err(Error::Grid(format!(
                "grid [{}, {}] must lie strictly inside the domain ({}, {})",
                grid.x_min(),
                grid.x_max(),
                dom.lower,
                dom.upper
            )));
        }
        let ground = family.state(Sector::One, 0)?;
        let mut table = Self {
            grid: *grid,
            ground,
            family: family.clone(),
            forward: Vec::new(),
            backward: Vec::new(),
            err_est: 0.0,
        };
        let n = grid.len();
        let segments = (0..n - 1)
            .into_par_iter()
            .map(|i| table.density_integral(grid.node(i), grid.node(i + 1)))
            .collect::<Result<Vec<(f64, f64)>>>()?;
        let (head, head_err) = table.density_integral(dom.lower, grid.x_min())?;
        let (tail, tail_err) = table.density_integral(grid.x_max(), table.tail_end(grid.x_max())?)?;

        let mut forward = Vec::with_capacity(n);
        forward.push(head);
        for &(s, _) in &segments {
            forward.push(forward[forward.len() - 1] + s);
        }
        let mut backward = vec![0.0; n];
        backward[n - 1] = tail;
        for i in (0..n - 1).rev() {
            backward[i] = backward[i + 1] + segments[i].0;
        }
        table.err_est = head_err + tail_err + segments.iter().map(|s| s.1).sum::<f64>();
        table.forward = forward;
        table.backward = backward;
        Ok(table)
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// `I(x_i)` at the grid nodes.
    pub fn forward_values(&self) -> &[f64] {
        &self.forward
    }

    /// `J(x_i) = 1 - I(x_i)` at the grid nodes, accumulated from the upper end.
    pub fn backward_values(&self) -> &[f64] {
        &self.backward
    }

    /// `I(upper)`: the ground-state norm as seen by the table.
    pub fn total(&self) -> f64 {
        self.forward[0] + self.backward[0]
    }

    pub fn err_est(&self) -> f64 {
        self.err_est
    }

    /// `I(x)`, integrated from the lower domain boundary.
    pub fn forward(&self, x: f64) -> Result<f64> {
        let n = self.grid.len();
        if x < self.grid.x_min() {
            return Ok(self.density_integral(self.family.domain().lower, x)?.0);
        }
        if x > self.grid.x_max() {
            return Ok(self.forward[n - 1] + self.density_integral(self.grid.x_max(), x)?.0);
        }
        let k = self.segment(x);
        Ok(self.forward[k] + self.density_integral(self.grid.node(k), x)?.0)
    }

    /// `J(x) = 1 - I(x)`, integrated toward the upper domain boundary.
    pub fn backward(&self, x: f64) -> Result<f64> {
        if x < self.grid.x_min() {
            return Ok(self.backward[0] + self.density_integral(x, self.grid.x_min())?.0);
        }
        if x > self.grid.x_max() {
            return Ok(self.density_integral(x, self.tail_end(x)?)?.0);
        }
        let k = self.segment(x);
        Ok(self.backward[k + 1] + self.density_integral(x, self.grid.node(k + 1))?.0)
    }

    fn segment(&self, x: f64) -> usize {
        let k = ((x - self.grid.x_min()) / self.grid.spacing()).floor() as usize;
        k.min(self.grid.len() - 2)
    }

    fn density_integral(&self, a: f64, b: f64) -> Result<(f64, f64)> {
        let r = integrate(
            |x| self.ground.eval_unchecked(x).map(|(v, _)| v * v),
            a,
            b,
            &QuadOptions::relative(TABLE_QUAD),
        )?;
        Ok((r.value, r.err_est))
    }

    /// Point past which `Psi0` is below `1e-17` of its value at `x0`.
    fn tail_end(&self, x0: f64) -> Result<f64> {
        let dom = self.family.domain();
        if dom.upper.is_finite() {
            return Ok(dom.upper);
        }
        let start = self.ground.eval_unchecked(x0)?.0.abs();
        let mut step = 10.0 * self.grid.spacing();
        let mut x = x0;
        for _ in 0..200 {
            let next = x + step;
            match self.ground.eval_unchecked(next) {
                Ok((v, _)) if v.is_finite() => {
                    x = next;
                    if v.abs() <= 1e-17 * start {
                        return Ok(x);
                    }
                }
                _ => return Ok(x),
            }
            step *= 1.5;
        }
        Ok(x)
    }
}

/// Which Dirac eigenspinor to assemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinorLevel {
    /// `(Psi0_hat, 0)`.
    Ground,
    /// `(Psi_hat_{n+1}, Psi2_n)`.
    Excited(usize),
}

/// Pointwise ingredients of the deformed quantities.
struct Local {
    phi: f64,
    dphi: f64,
    psi0: f64,
    dpsi0: f64,
    /// `I'/D`, zero when undeformed.
    g: f64,
    /// `D`, `None` when undeformed.
    den: Option<f64>,
}

/// A family deformed by one member of the isospectral family.
#[derive(Debug, Clone)]
pub struct DeformedFamily {
    family: Arc<Family>,
    deformation: Deformation,
    table: Arc<IntegralTable>,
}

impl DeformedFamily {
    pub fn new(family: Arc<Family>, deformation: Deformation, table: Arc<IntegralTable>) -> Result<Self> {
        if let Deformation::Generic(l) = deformation {
            Deformation::generic(l)?;
        }
        let this = Self { family, deformation, table };
        // denominator keeps one sign over the whole table
        match deformation {
            Deformation::Generic(l) if l > 0.0 => {}
            Deformation::Generic(l) => {
                let worst = this.table.backward.iter().fold(f64::INFINITY, |m, &j| m.min(j));
                if (1.0 + l) - worst >= 0.0 {
                    return Err(Error::InvalidDeformation(format!("denominator I(x)+{l} changes sign on the grid")));
                }
            }
            _ => {}
        }
        Ok(this)
    }

    /// Convenience constructor on the family's default grid.
    pub fn with_default_grid(family: Arc<Family>, deformation: Deformation) -> Result<Self> {
        let table = Arc::new(IntegralTable::compute(&family, &family.default_grid()?)?);
        Self::new(family, deformation, table)
    }

    pub fn family(&self) -> &Arc<Family> {
        &self.family
    }

    pub fn deformation(&self) -> Deformation {
        self.deformation
    }

    pub fn table(&self) -> &Arc<IntegralTable> {
        &self.table
    }

    /// Same family and table, different deformation.
    pub fn with_deformation(&self, deformation: Deformation) -> Result<Self> {
        Self::new(Arc::clone(&self.family), deformation, Arc::clone(&self.table))
    }

    /// `D(x)`, or `None` for the undeformed limit.
    pub fn denominator(&self, x: f64) -> Result<Option<f64>> {
        self.family.domain().check_point(x)?;
        self.raw_denominator(x)
    }

    fn raw_denominator(&self, x: f64) -> Result<Option<f64>> {
        Ok(match self.deformation {
            Deformation::Undeformed => None,
            Deformation::Pursey => Some(self.table.forward(x)?),
            Deformation::AbrahamMoses => Some(-self.table.backward(x)?),
            Deformation::Generic(l) if l > 0.0 => Some(self.table.forward(x)? + l),
            Deformation::Generic(l) => Some((1.0 + l) - self.table.backward(x)?),
        })
    }

    fn local(&self, x: f64) -> Result<Local> {
        let (phi, dphi) = self.family.phi_with_derivative(x)?;
        let (psi0, dpsi0) = self.table.ground.eval_unchecked(x)?;
        let den = self.raw_denominator(x)?;
        let g = match den {
            None => 0.0,
            Some(d) => {
                let ip = psi0 * psi0;
                if !d.is_finite() || d == 0.0 || d.abs() < SINGULARITY_RATIO * ip {
                    return Err(Error::Singularity { what: "deformation denominator", x, value: d });
                }
                ip / d
            }
        };
        Ok(Local { phi, dphi, psi0, dpsi0, g, den })
    }

    /// `phi(x, lambda) = phi + I'/D`.
    pub fn phi(&self, x: f64) -> Result<f64> {
        let l = self.local(x)?;
        Ok(l.phi + l.g)
    }

    /// `(phi_lambda, phi_lambda')` with `(I'/D)' = -2 phi g - g^2`.
    pub fn phi_with_derivative(&self, x: f64) -> Result<(f64, f64)> {
        let l = self.local(x)?;
        Ok((l.phi + l.g, l.dphi - 2.0 * l.phi * l.g - l.g * l.g))
    }

    /// Deformed sector-1 potential `phi_lambda^2 - phi_lambda'`.
    pub fn v1(&self, x: f64) -> Result<f64> {
        let (p, dp) = self.phi_with_derivative(x)?;
        Ok(p * p - dp)
    }

    /// `V1 - 2 (ln D)''` with `I'' = 2 Psi0 Psi0'` taken from the state derivative.
    pub fn v1_log_route(&self, x: f64) -> Result<f64> {
        let l = self.local(x)?;
        let v1 = l.phi * l.phi - l.dphi;
        Ok(match l.den {
            None => v1,
            Some(d) => v1 - 2.0 * (2.0 * l.psi0 * l.dpsi0 / d - l.g * l.g),
        })
    }

    /// Sector-2 potential `phi_lambda^2 + phi_lambda'`, unchanged by the deformation.
    pub fn v2(&self, x: f64) -> Result<f64> {
        let (p, dp) = self.phi_with_derivative(x)?;
        Ok(p * p + dp)
    }

    /// Normalized deformed ground state `sqrt(lambda (1 + lambda)) Psi0 / D`.
    pub fn ground_state(&self, x: f64) -> Result<f64> {
        let l = self.local(x)?;
        match (self.deformation, l.den) {
            (Deformation::Undeformed, _) => Ok(l.psi0),
            (Deformation::Generic(lam), Some(d)) => Ok((lam * (1.0 + lam)).sqrt() * l.psi0 / d),
            _ => Err(Error::InvalidDeformation(format!(
                "{} deletes the ground state; there is no deformed ground state",
                self.deformation
            ))),
        }
    }

    /// The would-be ground state `Psi0 / D` of the Pursey and Abraham-Moses
    /// limits, which fails to be normalizable at one boundary.
    pub fn deleted_candidate(&self, x: f64) -> Result<f64> {
        if !self.deformation.deletes_ground_state() {
            return Err(Error::InvalidDeformation(format!("{} keeps its ground state", self.deformation)));
        }
        let l = self.local(x)?;
        Ok(l.psi0 / l.den.expect("limit deformations have a denominator"))
    }

    /// `Psi_hat_{n+1} = Psi_{n+1} + (g / E_{n+1}) (Psi_{n+1}' + phi Psi_{n+1})`.
    pub fn excited_state(&self, n: usize, x: f64) -> Result<f64> {
        let state = self.family.state(Sector::One, n + 1)?;
        let l = self.local(x)?;
        let (psi, dpsi) = state.eval_unchecked(x)?;
        Ok(psi + l.g / state.energy() * (dpsi + l.phi * psi))
    }

    /// Level `n` of the deformed sector-1 potential: the ground state first
    /// for the generic family, the excited states only for the limits.
    pub fn level(&self, n: usize, x: f64) -> Result<f64> {
        match (self.deformation.deletes_ground_state(), n) {
            (true, _) => self.excited_state(n, x),
            (false, 0) => self.ground_state(x),
            (false, _) => self.excited_state(n - 1, x),
        }
    }

    /// Analytic levels of the deformed sector-1 potential.
    pub fn spectrum(&self, count: usize) -> Vec<SpectralLine> {
        if self.deformation.deletes_ground_state() {
            self.family
                .params()
                .spectrum(Sector::One, count + 1)
                .into_iter()
                .skip(1)
                .enumerate()
                .map(|(n, line)| SpectralLine { n, ..line })
                .collect()
        } else {
            self.family.spectrum(Sector::One, count)
        }
    }

    /// Upper and lower components of a Dirac eigenspinor.
    pub fn dirac_spinor(&self, level: SpinorLevel, x: f64) -> Result<(f64, f64)> {
        match level {
            SpinorLevel::Ground => Ok((self.ground_state(x)?, 0.0)),
            SpinorLevel::Excited(n) => Ok((self.excited_state(n, x)?, self.family.psi2(n, x)?)),
        }
    }

    /// `int |f|^2` over the whole domain for one of this family's states.
    pub fn norm_of(&self, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
        let dom = self.family.domain();
        let far = self.family.far_cutoff(&f);
        let r = integrate(|x| f(x).map(|v| v * v), dom.lower, far, &QuadOptions::relative(1e-12))?;
        Ok(r.value)
    }

    /// Norm of the deformed excited state `Psi_hat_{n+1}`.
    pub fn excited_norm(&self, n: usize) -> Result<f64> {
        self.norm_of(|x| self.excited_state(n, x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilyParams;
    use crate::numerics::{central_diff, DiffOrder};

    fn radial() -> DeformedFamily {
        let fam = Arc::new(Family::new(FamilyParams::radial(3.0, 1.0, 1).unwrap()).unwrap());
        DeformedFamily::with_default_grid(fam, Deformation::Generic(1.0)).unwrap()
    }

    #[test]
    fn lambda_classification() {
        assert_eq!(Deformation::from_lambda(0.0).unwrap(), Deformation::Pursey);
        assert_eq!(Deformation::from_lambda(-1.0).unwrap(), Deformation::AbrahamMoses);
        assert_eq!(Deformation::from_lambda(f64::INFINITY).unwrap(), Deformation::Undeformed);
        assert_eq!(Deformation::from_lambda(f64::NEG_INFINITY).unwrap(), Deformation::Undeformed);
        assert_eq!(Deformation::from_lambda(-1.5).unwrap(), Deformation::Generic(-1.5));
        let err = Deformation::from_lambda(-0.5).unwrap_err().to_string();
        assert!(err.contains("vanishes in-domain"), "{err}");
        assert!(Deformation::generic(0.0).is_err());
        assert!(Deformation::generic(f64::NAN).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(Deformation::Generic(0.05).label(), "lambda=0.05");
        assert_eq!(Deformation::Generic(-1.1).label(), "lambda=-1.1");
        assert_eq!(Deformation::Generic(1.0).label(), "lambda=1");
        assert_eq!(Deformation::AbrahamMoses.label(), "am");
    }

    #[test]
    fn table_is_monotone_and_normalized() {
        let d = radial();
        let t = d.table();
        assert!((t.total() - 1.0).abs() < 1e-8);
        assert!(t.forward_values().windows(2).all(|w| w[1] >= w[0]));
        assert!(t.backward_values().windows(2).all(|w| w[1] <= w[0]));
        assert!(t.forward(1e-9).unwrap() < 1e-40);
    }

    #[test]
    fn cumulative_integral_at_worked_point() {
        let d = radial();
        let i1 = d.table().forward(1.0).unwrap();
        assert!((i1 - 0.361_686_296_042_880_2).abs() < 1e-12, "{i1}");
        let j1 = d.table().backward(1.0).unwrap();
        assert!((i1 + j1 - 1.0).abs() < 1e-10);
    }

    #[test]
    fn phi_lambda_from_worked_values() {
        // phi(1) = -1/4, Psi0(1) and I(1) from high-precision evaluation
        let psi0 = 0.993_354_977_208_109_3;
        let i1 = 0.361_686_296_042_880_2;
        let d = radial();
        let expect = -0.25 + psi0 * psi0 / (i1 + 1.0);
        assert!((d.phi(1.0).unwrap() - expect).abs() < 1e-12);
        let p = d.with_deformation(Deformation::Pursey).unwrap();
        assert!((p.phi(1.0).unwrap() - (-0.25 + psi0 * psi0 / i1)).abs() < 1e-11);
        let am = d.with_deformation(Deformation::AbrahamMoses).unwrap();
        assert!((am.phi(1.0).unwrap() - (-0.25 + psi0 * psi0 / (i1 - 1.0))).abs() < 1e-11);
    }

    #[test]
    fn undeformed_is_identity() {
        let u = radial().with_deformation(Deformation::Undeformed).unwrap();
        let fam = u.family().clone();
        for &r in &[0.3, 1.0, 2.0] {
            assert_eq!(u.phi(r).unwrap(), fam.phi(r).unwrap());
            assert_eq!(u.excited_state(0, r).unwrap(), fam.psi1(1, r).unwrap());
            assert_eq!(u.ground_state(r).unwrap(), fam.psi1(0, r).unwrap());
        }
    }

    #[test]
    fn two_routes_and_finite_difference_agree() {
        let d = radial().with_deformation(Deformation::Generic(0.1)).unwrap();
        let fam = d.family().clone();
        let r = 1.0;
        let ln_d = |x: f64| d.denominator(x).unwrap().unwrap().ln();
        let fd = central_diff(ln_d, r, DiffOrder::Second, 1e-3);
        let v1 = fam.partner_potentials(r).unwrap().0;
        assert!((d.v1(r).unwrap() - (v1 - 2.0 * fd)).abs() < 1e-6);
        assert!((d.v1(r).unwrap() - d.v1_log_route(r).unwrap()).abs() < 1e-10);
        assert!((d.v2(r).unwrap() - fam.partner_potentials(r).unwrap().1).abs() < 1e-10);
    }

    #[test]
    fn large_lambda_limits() {
        let d = radial();
        let fam = d.family().clone();
        for lam in [1e8, -1e8] {
            let big = d.with_deformation(Deformation::Generic(lam)).unwrap();
            for &r in &[0.2, 1.0, 3.0] {
                assert!((big.v1(r).unwrap() - fam.partner_potentials(r).unwrap().0).abs() < 1e-6);
                let ratio = big.ground_state(r).unwrap() / fam.psi1(0, r).unwrap();
                assert!((ratio.abs() - 1.0).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn deformed_ground_state_is_normalized_and_nodeless() {
        for lam in [1.0, -1.5] {
            let d = radial().with_deformation(Deformation::Generic(lam)).unwrap();
            let norm = d.norm_of(|x| d.ground_state(x)).unwrap();
            assert!((norm - 1.0).abs() < 1e-8, "lambda {lam}: {norm}");
            let sign = d.ground_state(0.5).unwrap().signum();
            for i in 1..60 {
                assert_eq!(d.ground_state(0.1 * f64::from(i)).unwrap().signum(), sign);
            }
        }
    }

    #[test]
    fn limits_have_no_ground_state() {
        let p = radial().with_deformation(Deformation::Pursey).unwrap();
        assert!(matches!(p.ground_state(1.0), Err(Error::InvalidDeformation(_))));
        assert!(matches!(p.dirac_spinor(SpinorLevel::Ground, 1.0), Err(Error::InvalidDeformation(_))));
        let e: Vec<f64> = p.spectrum(3).iter().map(|l| l.energy).collect();
        assert_eq!(e, vec![6.0, 12.0, 18.0]);
    }

    #[test]
    fn spinor_lower_component_is_undeformed() {
        let d = radial();
        let u = d.with_deformation(Deformation::Undeformed).unwrap();
        let (_, lower) = d.dirac_spinor(SpinorLevel::Excited(0), 0.8).unwrap();
        let (_, lower_u) = u.dirac_spinor(SpinorLevel::Excited(0), 0.8).unwrap();
        assert_eq!(lower, lower_u);
        assert_eq!(d.dirac_spinor(SpinorLevel::Ground, 0.8).unwrap().1, 0.0);
    }

    #[test]
    fn pursey_candidate_diverges_at_lower_wall() {
        let p = radial().with_deformation(Deformation::Pursey).unwrap();
        let partial = |a: f64| {
            integrate(|x| p.deleted_candidate(x).map(|v| v * v), a, 1.0, &QuadOptions::relative(1e-8))
                .unwrap()
                .value
        };
        assert!(partial(1e-3) > 10.0 * partial(1e-2));
    }

    #[test]
    fn sign_changing_denominator_is_rejected() {
        let d = radial();
        assert!(d.with_deformation(Deformation::Generic(-0.5)).is_err());
    }
}
