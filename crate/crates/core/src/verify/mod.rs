//! Machine-checkable versions of the analytic claims, collected into
//! deterministic reports.

pub mod fixtures;

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::deform::{Deformation, DeformedFamily, IntegralTable};
use crate::error::{Error, Result};
use crate::families::{Family, FamilyParams, Potential, Sector};
use crate::numerics::{central_diff, fd_eigensolve_detailed, DiffOrder, GridSpec, SampledFunction};

/// Eigenvalue agreement, limited by the `O(h^2)` discretization.
pub const EIGEN_TOL: f64 = 2e-3;
/// Scaled Schrodinger residuals (second derivatives by differencing).
pub const RESIDUAL_TOL: f64 = 1e-5;
/// First-order identities with one differenced derivative.
pub const IDENTITY_TOL: f64 = 1e-7;
/// Fully analytic identities.
pub const EXACT_TOL: f64 = 1e-9;
pub const NORM_TOL: f64 = 1e-8;
pub const LIMIT_TOL: f64 = 1e-6;
/// Eigenvalues below this in a deletion check are truncation artifacts.
pub const SPURIOUS_THRESHOLD: f64 = -1e-2;

const SAMPLES: usize = 41;
const FIXTURE_POINTS: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Eigenvalue,
    Convergence,
    Identity,
    Normalization,
    Limit,
    Fixture,
    Nodes,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// The claim under test, in words.
    pub claim: String,
    pub kind: CheckKind,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    /// Passes when `measured <= tolerance`; NaN fails.
    pub fn new(name: impl Into<String>, claim: impl Into<String>, kind: CheckKind, measured: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            claim: claim.into(),
            kind,
            measured,
            tolerance,
            passed: measured <= tolerance,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        Self { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// One record per check plus a summary line.
    pub fn to_text(&self) -> String {
        let mut out = format!("report: {}\n", self.subject);
        for c in &self.checks {
            let _ = writeln!(
                out,
                "[{}] {} | claim: {} | measured: {:.6e} | tolerance: {:.1e}{}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.claim,
                c.measured,
                c.tolerance,
                if c.detail.is_empty() { String::new() } else { format!(" | {}", c.detail) }
            );
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "overall: {} ({} checks, {} failed)",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed
        );
        out
    }

    /// Key-value tree: checks grouped by kind, keyed by name.
    pub fn to_tree(&self) -> Value {
        let mut groups = serde_json::Map::new();
        for c in &self.checks {
            let key = serde_json::to_value(c.kind).expect("kind serializes").as_str().unwrap_or("other").to_owned();
            let group = groups.entry(key).or_insert_with(|| Value::Object(Default::default()));
            group.as_object_mut().expect("group is an object").insert(
                c.name.clone(),
                json!({
                    "claim": c.claim,
                    "measured": c.measured,
                    "tolerance": c.tolerance,
                    "passed": c.passed,
                    "detail": c.detail,
                }),
            );
        }
        json!({
            "subject": self.subject,
            "version": env!("CARGO_PKG_VERSION"),
            "passed": self.passed(),
            "check_count": self.checks.len(),
            "checks": groups,
        })
    }
}

/// Sector-1 spectrum of `V1` via the finite-difference solver.
fn solve(d: &DeformedFamily, grid: &GridSpec, k: usize) -> Result<crate::numerics::EigenSolution> {
    fd_eigensolve_detailed(|x| d.v1(x), grid, k)
}

fn convergence_check(label: &str, corrections: &[f64]) -> Check {
    let (level, worst) = corrections
        .iter()
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, &c)| if c > acc.1 { (i, c) } else { acc });
    Check::new(
        format!("{label}/richardson"),
        "eigenvalues converged under grid refinement",
        CheckKind::Convergence,
        worst,
        EIGEN_TOL,
    )
    .with_detail(format!("largest correction at level {level}"))
}

fn spectrum_check(name: String, claim: &str, computed: &[f64], expected: &[f64]) -> Check {
    let (worst_level, worst) = computed
        .iter()
        .zip(expected)
        .enumerate()
        .fold((0, 0.0f64), |acc, (i, (c, e))| if (c - e).abs() > acc.1 { (i, (c - e).abs()) } else { acc });
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(", ");
    Check::new(name, claim, CheckKind::Eigenvalue, worst, EIGEN_TOL).with_detail(format!(
        "computed [{}] expected [{}], worst level {worst_level}",
        fmt(computed),
        fmt(expected)
    ))
}

/// Deformed spectra against the undeformed one, which is itself checked
/// against the analytic levels.
pub fn check_isospectrality(
    family: &Arc<Family>,
    table: &Arc<IntegralTable>,
    lambdas: &[f64],
    k: usize,
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("isospectrality of {}", family.params()));
    if lambdas.is_empty() {
        return Ok(report);
    }
    let grid = *table.grid();
    let k = k.min(family.params().bound_state_count(Sector::One).unwrap_or(usize::MAX));
    let analytic: Vec<f64> = family.spectrum(Sector::One, k).iter().map(|l| l.energy).collect();
    let base = DeformedFamily::new(Arc::clone(family), Deformation::Undeformed, Arc::clone(table))?;
    let deformed = lambdas
        .iter()
        .map(|&l| base.with_deformation(Deformation::generic(l)?))
        .collect::<Result<Vec<_>>>()?;

    let undeformed = solve(&base, &grid, k)?;
    report.push(convergence_check("undeformed", &undeformed.corrections()));
    report.push(spectrum_check(
        "undeformed/analytic".into(),
        "finite-difference spectrum of V1 matches the analytic levels",
        &undeformed.eigenvalues,
        &analytic,
    ));
    let solved = deformed.par_iter().map(|d| solve(d, &grid, k)).collect::<Result<Vec<_>>>()?;
    for (d, sol) in deformed.iter().zip(solved) {
        let label = d.deformation().label();
        report.push(convergence_check(&label, &sol.corrections()));
        report.push(spectrum_check(
            format!("{label}/isospectral"),
            "deformed V1 is strictly isospectral to the undeformed V1",
            &sol.eigenvalues,
            &undeformed.eigenvalues,
        ));
    }
    Ok(report)
}

/// Pursey or Abraham-Moses spectrum against the sector-2 levels.
pub fn check_state_deletion(
    family: &Arc<Family>,
    table: &Arc<IntegralTable>,
    kind: Deformation,
    k: usize,
) -> Result<VerificationReport> {
    if !kind.deletes_ground_state() {
        return Err(Error::InvalidDeformation(format!("{kind} is not a state-deleting limit")));
    }
    let d = DeformedFamily::new(Arc::clone(family), kind, Arc::clone(table))?;
    let expected: Vec<f64> = family.spectrum(Sector::Two, k).iter().map(|l| l.energy).collect();
    let mut report = VerificationReport::new(format!("{kind} of {}", family.params()));
    if expected.is_empty() {
        return Ok(report);
    }
    let sol = solve(&d, table.grid(), expected.len())?;
    if let Some(&low) = sol.eigenvalues.iter().find(|&&e| e < SPURIOUS_THRESHOLD) {
        return Err(Error::SpuriousEigenvalue { value: low, threshold: SPURIOUS_THRESHOLD });
    }
    let label = kind.label();
    report.push(convergence_check(&label, &sol.corrections()));
    report.push(spectrum_check(
        format!("{label}/deletes-ground-state"),
        "the limit potential has the partner spectrum: one bound state less",
        &sol.eigenvalues,
        &expected,
    ));
    Ok(report)
}

fn sample_points(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
}

/// Supremum-normalized residual of `-psi'' + (V - E) psi`, with `psi''`
/// differenced from the analytic `psi'`.
fn schrodinger_residual(
    value: impl Fn(f64) -> Result<(f64, f64)>,
    potential: impl Fn(f64) -> Result<f64>,
    energy: f64,
    lo: f64,
    hi: f64,
    h: f64,
) -> Result<f64> {
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for x in sample_points(lo, hi, SAMPLES) {
        let (psi, _) = value(x)?;
        let d2 = central_diff(|t| value(t).map(|v| v.1).unwrap_or(f64::NAN), x, DiffOrder::First, h);
        let v = potential(x)?;
        worst = worst.max((-d2 + (v - energy) * psi).abs());
        scale = scale.max(d2.abs() + (v * psi).abs() + (energy * psi).abs());
    }
    Ok(worst / scale)
}

/// Zero mode, intertwining, both Schrodinger equations, node counts and
/// normalization for states up to `n_max`.
pub fn check_susy_relations(family: &Arc<Family>, n_max: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("partner relations of {}", family.params()));
    let (lo, hi) = family.sampling_window()?;
    let h = ((hi - lo) * 1e-4).min(0.25 * (lo - family.domain().lower));
    let grid = family.default_grid()?;
    let count1 = (n_max + 1).min(family.params().bound_state_count(Sector::One).unwrap_or(usize::MAX));

    let ground = family.state(Sector::One, 0)?;
    let mut zero_mode = 0.0f64;
    for x in sample_points(lo, hi, SAMPLES) {
        let (phi, _) = family.phi_with_derivative(x)?;
        let (psi, dpsi) = ground.value_and_derivative(x)?;
        zero_mode = zero_mode.max((phi * psi + dpsi).abs() / (phi * psi).abs().max(dpsi.abs()).max(f64::MIN_POSITIVE));
    }
    report.push(Check::new(
        "zero-mode",
        "phi = -(ln Psi0)': the ground state is annihilated by A",
        CheckKind::Identity,
        zero_mode,
        EXACT_TOL,
    ));

    for n in 0..count1 {
        let s = family.state(Sector::One, n)?;
        let res = schrodinger_residual(
            |x| s.value_and_derivative(x),
            |x| family.partner_potentials(x).map(|v| v.0),
            s.energy(),
            lo,
            hi,
            h,
        )?;
        report.push(Check::new(
            format!("sector1/n={n}/schrodinger"),
            "Psi1_n solves -psi'' + V1 psi = E_n psi",
            CheckKind::Identity,
            res,
            RESIDUAL_TOL,
        ));
        let samples = SampledFunction::tabulate(grid, |x| s.value(x))?;
        let nodes = samples.sign_changes(1e-8 * samples.max_abs());
        report.push(
            Check::new(
                format!("sector1/n={n}/nodes"),
                "the n-th state has n nodes",
                CheckKind::Nodes,
                (nodes as f64 - n as f64).abs(),
                0.0,
            )
            .with_detail(format!("{nodes} sign changes")),
        );
        let norm = family.norm_of_state(&s)?;
        report.push(Check::new(
            format!("sector1/n={n}/norm"),
            "analytic state is normalized",
            CheckKind::Normalization,
            (norm - 1.0).abs(),
            NORM_TOL,
        ));
    }

    for n in 0..count1.saturating_sub(1) {
        let s2 = family.state(Sector::Two, n)?;
        let up = family.state(Sector::One, n + 1)?;
        let eps = up.energy().sqrt();
        let res = schrodinger_residual(
            |x| s2.value_and_derivative(x),
            |x| family.partner_potentials(x).map(|v| v.1),
            s2.energy(),
            lo,
            hi,
            h,
        )?;
        report.push(Check::new(
            format!("sector2/n={n}/schrodinger"),
            "Psi2_n solves -psi'' + V2 psi = E psi with E = E1_{n+1}",
            CheckKind::Identity,
            res,
            RESIDUAL_TOL,
        ));
        let (mut fwd, mut back, mut scale) = (0.0f64, 0.0f64, 0.0f64);
        for x in sample_points(lo, hi, SAMPLES) {
            let phi = family.phi(x)?;
            let psi1 = up.value(x)?;
            let psi2 = s2.value(x)?;
            let d1 = central_diff(|t| up.value(t).unwrap_or(f64::NAN), x, DiffOrder::First, h);
            let d2 = central_diff(|t| s2.value(t).unwrap_or(f64::NAN), x, DiffOrder::First, h);
            fwd = fwd.max((d1 + phi * psi1 - eps * psi2).abs());
            back = back.max((-d2 + phi * psi2 - eps * psi1).abs());
            scale = scale.max(eps * psi1.abs().max(psi2.abs()));
        }
        report.push(Check::new(
            format!("intertwining/n={n}"),
            "A Psi1_{n+1} = sqrt(E_{n+1}) Psi2_n",
            CheckKind::Identity,
            fwd / scale,
            IDENTITY_TOL,
        ));
        report.push(Check::new(
            format!("adjoint-intertwining/n={n}"),
            "A^dagger Psi2_n = sqrt(E_{n+1}) Psi1_{n+1}",
            CheckKind::Identity,
            back / scale,
            IDENTITY_TOL,
        ));
        let norm = family.norm_of_state(&s2)?;
        report.push(Check::new(
            format!("sector2/n={n}/norm"),
            "partner state is normalized",
            CheckKind::Normalization,
            (norm - 1.0).abs(),
            NORM_TOL,
        ));
    }
    Ok(report)
}

/// Deformed ground-state norms, excited-state norms, route agreement and the
/// `lambda -> +-inf` limits.
pub fn check_deformed_states(
    family: &Arc<Family>,
    table: &Arc<IntegralTable>,
    lambdas: &[f64],
) -> Result<VerificationReport> {
    let mut report = VerificationReport::new(format!("deformed states of {}", family.params()));
    let (lo, hi) = family.sampling_window()?;
    let base = DeformedFamily::new(Arc::clone(family), Deformation::Undeformed, Arc::clone(table))?;
    report.push(Check::new(
        "integral/total",
        "I(x) runs from 0 to 1 over the domain",
        CheckKind::Normalization,
        (table.total() - 1.0).abs(),
        NORM_TOL,
    ));
    let excited = family.params().bound_state_count(Sector::One).map_or(true, |c| c > 1);
    for &l in lambdas {
        let d = base.with_deformation(Deformation::generic(l)?)?;
        let label = d.deformation().label();
        let norm = d.norm_of(|x| d.ground_state(x))?;
        report.push(Check::new(
            format!("{label}/ground-norm"),
            "deformed ground state sqrt(l(1+l)) Psi0/(I+l) is normalized",
            CheckKind::Normalization,
            (norm - 1.0).abs(),
            NORM_TOL,
        ));
        if excited {
            let norm = d.excited_norm(0)?;
            report.push(
                Check::new(
                    format!("{label}/excited-norm"),
                    "deformed first excited state keeps unit norm",
                    CheckKind::Normalization,
                    (norm - 1.0).abs(),
                    LIMIT_TOL,
                )
                .with_detail(format!("norm {norm:.12}")),
            );
        }
        let mut routes = 0.0f64;
        for x in sample_points(lo, hi, SAMPLES) {
            let (a, b) = (d.v1(x)?, d.v1_log_route(x)?);
            routes = routes.max((a - b).abs() / (1.0 + a.abs()));
        }
        report.push(Check::new(
            format!("{label}/two-routes"),
            "V1(lambda) from phi^2 - phi' equals V1 - 2 (ln(I+lambda))''",
            CheckKind::Identity,
            routes,
            IDENTITY_TOL,
        ));
    }
    for l in [1e8, -1e8] {
        let d = base.with_deformation(Deformation::generic(l)?)?;
        let (mut dv, mut dpsi) = (0.0f64, 0.0f64);
        for x in sample_points(lo, hi, SAMPLES) {
            dv = dv.max((d.v1(x)? - base.v1(x)?).abs());
            dpsi = dpsi.max((d.ground_state(x)?.abs() - base.ground_state(x)?.abs()).abs());
        }
        let label = d.deformation().label();
        report.push(Check::new(
            format!("{label}/potential-limit"),
            "V1(lambda) approaches V1 as |lambda| grows",
            CheckKind::Limit,
            dv,
            LIMIT_TOL,
        ));
        report.push(Check::new(
            format!("{label}/state-limit"),
            "deformed ground state approaches Psi0 as |lambda| grows",
            CheckKind::Limit,
            dpsi,
            LIMIT_TOL,
        ));
    }
    Ok(report)
}

struct FixtureCase {
    name: &'static str,
    claim: &'static str,
    window: (f64, f64),
    tolerance: f64,
    fixture: fn(f64) -> f64,
    /// Compare magnitudes only (sign conventions differ).
    magnitude: bool,
}

fn fixture_check(case: &FixtureCase, engine: impl Fn(f64) -> Result<f64> + Sync) -> Result<Check> {
    let (lo, hi) = case.window;
    let diffs = sample_points(lo, hi, FIXTURE_POINTS)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x| {
            let (e, f) = (engine(x)?, (case.fixture)(x));
            let delta = if case.magnitude { e.abs() - f.abs() } else { e - f };
            Ok((x, delta.abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (worst_x, worst) = diffs.iter().fold((lo, 0.0f64), |acc, &(x, d)| if d > acc.1 || d.is_nan() { (x, d) } else { acc });
    Ok(Check::new(case.name, case.claim, CheckKind::Fixture, worst, case.tolerance)
        .with_detail(format!("max deviation at x = {worst_x:.6} over [{lo}, {hi}]")))
}

/// Printed closed forms against the engine.
pub fn check_closed_forms() -> Result<VerificationReport> {
    use fixtures::{gpt, radial, scarf};
    let mut report = VerificationReport::new("printed closed forms (m = 1)");
    type Case = (FamilyParams, Vec<(FixtureCase, Option<Deformation>)>, (f64, f64));
    let fc = |name, claim, window, tolerance, fixture, magnitude| FixtureCase {
        name,
        claim,
        window,
        tolerance,
        fixture,
        magnitude,
    };
    let cases: Vec<Case> = vec![
        (
            FamilyParams::radial(3.0, 1.0, 1)?,
            vec![
                (fc("radial/phi", "extended radial superpotential", (0.1, 6.0), 1e-10, radial::phi, false), None),
                (fc("radial/ground-state", "radial ground state", (0.05, 6.0), 1e-10, radial::ground_state, false), None),
                (fc("radial/integral", "I(r) in terms of erf", (0.05, 6.0), 1e-8, radial::integral, false), None),
                (
                    fc("radial/phi-lambda=1", "lambda family via zeta, xi, theta, upsilon", (0.1, 6.0), 1e-7, |r| radial::phi_lambda(1.0, r), false),
                    Some(Deformation::Generic(1.0)),
                ),
                (fc("radial/phi-pursey", "Pursey scalar potential", (0.1, 6.0), 1e-6, radial::pursey, false), Some(Deformation::Pursey)),
                (fc("radial/phi-am", "Abraham-Moses scalar potential", (0.1, 3.5), 1e-6, radial::abraham_moses, false), Some(Deformation::AbrahamMoses)),
            ],
            (0.1, 6.0),
        ),
        (
            FamilyParams::scarf_i(4.0, 2.0, 1)?,
            vec![
                (fc("scarf/phi", "extended Scarf-I superpotential", (-1.5, 1.5), 1e-10, scarf::phi, false), None),
                (fc("scarf/ground-state", "Scarf-I ground state", (-1.5, 1.5), 1e-10, scarf::ground_state, true), None),
                (fc("scarf/integral", "Scarf-I I(x)", (-1.55, 1.55), 1e-8, scarf::integral, false), None),
                (
                    fc("scarf/phi-lambda=1", "Scarf-I lambda family", (-1.55, 1.55), 1e-6, |x| scarf::phi_lambda(1.0, x), false),
                    Some(Deformation::Generic(1.0)),
                ),
                (fc("scarf/phi-pursey", "Scarf-I Pursey potential", (-1.0, 1.5), 1e-6, scarf::pursey, false), Some(Deformation::Pursey)),
                (fc("scarf/phi-am", "Scarf-I Abraham-Moses potential", (-1.5, 1.4), 1e-6, scarf::abraham_moses, false), Some(Deformation::AbrahamMoses)),
            ],
            (-1.5, 1.5),
        ),
        (
            FamilyParams::gpt(2.0, 5.0, 1)?,
            vec![
                (fc("gpt/phi", "extended GPT superpotential", (0.2, 10.0), 1e-10, gpt::phi, false), None),
                (fc("gpt/ground-state", "GPT ground state", (0.2, 10.0), 1e-10, gpt::ground_state, true), None),
                (fc("gpt/integral", "GPT I(r)", (0.2, 10.0), 1e-8, gpt::integral, false), None),
                (
                    fc("gpt/phi-lambda=1", "GPT lambda family", (0.2, 10.0), 1e-6, |r| gpt::phi_lambda(1.0, r), false),
                    Some(Deformation::Generic(1.0)),
                ),
                (fc("gpt/phi-pursey", "GPT Pursey potential", (0.2, 10.0), 1e-6, gpt::pursey, false), Some(Deformation::Pursey)),
                (fc("gpt/phi-am", "GPT Abraham-Moses potential", (0.2, 4.0), 1e-6, gpt::abraham_moses, false), Some(Deformation::AbrahamMoses)),
            ],
            (0.2, 10.0),
        ),
    ];
    for (params, rows, window) in cases {
        let family = Arc::new(Family::new(params)?);
        let table = Arc::new(IntegralTable::compute(&family, &family.default_grid()?)?);
        let base = DeformedFamily::new(Arc::clone(&family), Deformation::Undeformed, Arc::clone(&table))?;
        let mut family_checks = Vec::new();
        for (i, (case, deformation)) in rows.iter().enumerate() {
            let check = match (i, deformation) {
                (0, _) => fixture_check(case, |x| family.phi(x))?,
                (1, _) => fixture_check(case, |x| family.psi1(0, x))?,
                (2, _) => fixture_check(case, |x| table.forward(x))?,
                (_, Some(d)) => {
                    let dd = base.with_deformation(*d)?;
                    fixture_check(case, |x| dd.phi(x))?
                }
                (_, None) => unreachable!("deformed rows carry a deformation"),
            };
            family_checks.push(check);
        }
        // engine self-consistency, used to diagnose fixture failures
        let mut routes = 0.0f64;
        for d in [Deformation::Generic(1.0), Deformation::Pursey, Deformation::AbrahamMoses] {
            let dd = base.with_deformation(d)?;
            for x in sample_points(window.0, window.1, SAMPLES) {
                let (a, b) = (dd.v1(x)?, dd.v1_log_route(x)?);
                routes = routes.max((a - b).abs() / (1.0 + a.abs()));
            }
        }
        let engine_ok = routes <= IDENTITY_TOL;
        for c in &mut family_checks {
            if !c.passed && engine_ok {
                c.detail.push_str("; engine two-route check passes: fixture transcription suspect");
            }
        }
        report.checks.extend(family_checks);
        let tag = match params.potential {
            Potential::RadialOscillator { .. } => "radial",
            Potential::ScarfI { .. } => "scarf",
            Potential::Gpt { .. } => "gpt",
        };
        report.push(Check::new(
            format!("{tag}/engine-two-routes"),
            "deformed potential agrees between superpotential and log-derivative routes",
            CheckKind::Identity,
            routes,
            IDENTITY_TOL,
        ));
    }
    Ok(report)
}

/// Configuration for a full verification run of one family.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub params: FamilyParams,
    pub lambdas: Vec<f64>,
    pub levels: usize,
    pub grid: Option<GridSpec>,
    pub n_max: usize,
    pub closed_forms: bool,
}

impl VerifyConfig {
    pub fn new(params: FamilyParams) -> Self {
        Self { params, lambdas: vec![0.05, 0.1, 1.0, 10.0], levels: 4, grid: None, n_max: 3, closed_forms: true }
    }
}

/// Every check applicable to one family.
pub fn verify_family(config: &VerifyConfig) -> Result<VerificationReport> {
    let family = Arc::new(Family::new(config.params)?);
    let grid = match config.grid {
        Some(g) => g,
        None => family.default_grid()?,
    };
    let table = Arc::new(IntegralTable::compute(&family, &grid)?);
    let mut report = VerificationReport::new(family.params().to_string());
    report.merge(check_isospectrality(&family, &table, &config.lambdas, config.levels)?);
    for kind in [Deformation::Pursey, Deformation::AbrahamMoses] {
        report.merge(check_state_deletion(&family, &table, kind, config.levels.saturating_sub(1).max(1))?);
    }
    report.merge(check_susy_relations(&family, config.n_max)?);
    report.merge(check_deformed_states(&family, &table, &config.lambdas)?);
    if config.closed_forms && config.params.m == 1 {
        let closed = check_closed_forms()?;
        let tag = match config.params.potential {
            Potential::RadialOscillator { .. } => "radial/",
            Potential::ScarfI { .. } => "scarf/",
            Potential::Gpt { .. } => "gpt/",
        };
        let canonical = match config.params.potential {
            Potential::RadialOscillator { omega, ell } => omega == 3.0 && ell == 1.0,
            Potential::ScarfI { a, b } => a == 4.0 && b == 2.0,
            Potential::Gpt { a, b } => a == 2.0 && b == 5.0,
        };
        if canonical {
            report.checks.extend(closed.checks.into_iter().filter(|c| c.name.starts_with(tag)));
        }
    }
    Ok(report)
}
