use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use isodirac::deform::{Deformation, DeformedFamily, IntegralTable};
use isodirac::families::{Family, FamilyParams, Potential, Sector};
use isodirac::numerics::GridSpec;
use isodirac::verify::{verify_family, VerifyConfig};
use isodirac::Error;

mod output;

use output::{write_output, CsvTable};

/// Isospectral deformations of rationally extended Dirac scalar potentials.
#[derive(Parser)]
#[command(name = "isodirac", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Deformed superpotential phi(x, lambda) on a grid
    Potential {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Normalized level n of the deformed sector-1 potential on a grid
    Wavefunction {
        #[command(flatten)]
        run: RunArgs,
        /// Level index (0 is the ground state of the generic family)
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Emit psi/r (radial family only)
        #[arg(long)]
        divide_by_r: bool,
    },
    /// Analytic spectra of both sectors and of the Pursey/AM limits
    Spectrum {
        #[command(flatten)]
        run: RunArgs,
        /// Number of levels per sector
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
    /// Run every numerical check applicable to the family
    Verify {
        #[command(flatten)]
        run: RunArgs,
        /// Number of eigenvalues compared per potential
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyKind {
    Radial,
    Scarf,
    Gpt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    ReportText,
    ReportTree,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long, default_value_t = 3.0)]
    omega: f64,
    #[arg(long, default_value_t = 1.0)]
    ell: f64,
    /// Defaults: 4 for scarf, 2 for gpt
    #[arg(long = "A")]
    a: Option<f64>,
    /// Defaults: 2 for scarf, 5 for gpt
    #[arg(long = "B")]
    b: Option<f64>,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Comma-separated lambdas; `inf`/`-inf`, `0` and `-1` select the
    /// undeformed, Pursey and Abraham-Moses limits
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long)]
    grid_n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    xmin: Option<f64>,
    #[arg(long)]
    xmax: Option<f64>,
    /// Output file (stdout when absent); written atomically
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

/// Failure classes mapped onto exit codes.
enum Failure {
    Checks,
    Usage(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Checks => 1,
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_numerical() {
            Failure::Numerical(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("cannot write output: {e}"))
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            match &f {
                Failure::Checks => eprintln!("error: verification failed"),
                Failure::Usage(msg) => eprintln!("error: {msg}"),
                Failure::Numerical(msg) => eprintln!("error: numerical failure: {msg}"),
            }
            ExitCode::from(f.code())
        }
    }
}

fn run(command: Command) -> CliResult<()> {
    match command {
        Command::Potential { run } => cmd_potential(&run),
        Command::Wavefunction { run, n, divide_by_r } => cmd_wavefunction(&run, n, divide_by_r),
        Command::Spectrum { run, k } => cmd_spectrum(&run, k),
        Command::Verify { run, k } => cmd_verify(&run, k),
    }
}

impl RunArgs {
    fn params(&self) -> CliResult<FamilyParams> {
        let potential = match self.family {
            FamilyKind::Radial => Potential::RadialOscillator { omega: self.omega, ell: self.ell },
            FamilyKind::Scarf => Potential::ScarfI { a: self.a.unwrap_or(4.0), b: self.b.unwrap_or(2.0) },
            FamilyKind::Gpt => Potential::Gpt { a: self.a.unwrap_or(2.0), b: self.b.unwrap_or(5.0) },
        };
        Ok(FamilyParams::new(potential, self.m)?)
    }

    fn deformations(&self) -> CliResult<Vec<Deformation>> {
        match &self.lambda {
            None => Ok(vec![Deformation::Undeformed]),
            Some(list) => list.split(',').map(|s| parse_deformation(s.trim())).collect(),
        }
    }

    /// The family's default grid with any command-line overrides applied.
    fn grid(&self, family: &Family) -> CliResult<GridSpec> {
        let default = family.default_grid()?;
        let lo = self.xmin.unwrap_or(default.x_min());
        let hi = self.xmax.unwrap_or(default.x_max());
        let n = self.grid_n.unwrap_or(default.len());
        let dom = family.domain();
        if !(dom.contains(lo) && dom.contains(hi)) {
            return Err(Failure::Usage(format!(
                "grid [{lo}, {hi}] must lie strictly inside the open domain ({}, {})",
                dom.lower, dom.upper
            )));
        }
        Ok(GridSpec::new(lo, hi, n)?)
    }

    fn format(&self, default: Format) -> Format {
        self.format.unwrap_or(default)
    }
}

fn parse_deformation(s: &str) -> CliResult<Deformation> {
    match s.to_ascii_lowercase().as_str() {
        "pursey" => return Ok(Deformation::Pursey),
        "am" | "abraham-moses" => return Ok(Deformation::AbrahamMoses),
        "undeformed" => return Ok(Deformation::Undeformed),
        _ => {}
    }
    let lambda: f64 = s
        .parse()
        .map_err(|_| Failure::Usage(format!("cannot parse lambda value '{s}' (expected a number, inf or -inf)")))?;
    Deformation::from_lambda(lambda).map_err(|_| {
        Failure::Usage(format!(
            "lambda = {s} rejected: lambda in (-1, 0) makes the denominator I(x)+lambda vanish in-domain; \
             use lambda > 0, lambda < -1, or the limits 0 (Pursey), -1 (Abraham-Moses), inf (undeformed)"
        ))
    })
}

struct Setup {
    grid: GridSpec,
    base: DeformedFamily,
}

fn setup(run: &RunArgs) -> CliResult<Setup> {
    let family = Arc::new(Family::new(run.params()?)?);
    let grid = run.grid(&family)?;
    let table = Arc::new(IntegralTable::compute(&family, &grid)?);
    let base = DeformedFamily::new(Arc::clone(&family), Deformation::Undeformed, table)?;
    Ok(Setup { grid, base })
}

/// One column per deformation, evaluated concurrently and assembled in order.
fn curve_table(
    s: &Setup,
    deformations: &[Deformation],
    prefix: &str,
    eval: impl Fn(&DeformedFamily, f64) -> isodirac::Result<f64> + Sync,
) -> CliResult<CsvTable> {
    let xs: Vec<f64> = s.grid.nodes().collect();
    let columns = deformations
        .par_iter()
        .map(|&d| {
            let dd = s.base.with_deformation(d)?;
            xs.iter().map(|&x| eval(&dd, x)).collect::<isodirac::Result<Vec<f64>>>()
        })
        .collect::<isodirac::Result<Vec<_>>>()?;
    let mut header = vec!["x".to_owned()];
    header.extend(deformations.iter().map(|d| format!("{prefix}_{}", d.label())));
    Ok(CsvTable { header, x: xs, columns })
}

fn require_csv(run: &RunArgs) -> CliResult<()> {
    if run.format(Format::Csv) != Format::Csv {
        return Err(Failure::Usage("curve commands only emit --format csv".into()));
    }
    Ok(())
}

fn cmd_potential(run: &RunArgs) -> CliResult<()> {
    require_csv(run)?;
    let s = setup(run)?;
    let table = curve_table(&s, &run.deformations()?, "phi", |d, x| d.phi(x))?;
    Ok(write_output(run.out.as_deref(), &table.render())?)
}

fn cmd_wavefunction(run: &RunArgs, n: usize, divide_by_r: bool) -> CliResult<()> {
    require_csv(run)?;
    if divide_by_r && !matches!(run.family, FamilyKind::Radial) {
        return Err(Failure::Usage("--divide-by-r applies to the radial family only".into()));
    }
    let s = setup(run)?;
    let deformations = run.deformations()?;
    let table = curve_table(&s, &deformations, "psi", |d, x| {
        let v = d.level(n, x)?;
        Ok(if divide_by_r { v / x } else { v })
    })?;
    Ok(write_output(run.out.as_deref(), &table.render())?)
}

fn cmd_spectrum(run: &RunArgs, k: usize) -> CliResult<()> {
    let params = run.params()?;
    let rows: Vec<(&str, Vec<isodirac::SpectralLine>)> = vec![
        ("sector1", params.spectrum(Sector::One, k)),
        ("sector2", params.spectrum(Sector::Two, k)),
        // both limits carry the partner spectrum
        ("pursey", params.spectrum(Sector::Two, k)),
        ("am", params.spectrum(Sector::Two, k)),
    ];
    let truncated = params.bound_state_count(Sector::One).filter(|&c| c < k);
    let text = match run.format(Format::Csv) {
        Format::Csv => {
            let mut out = String::from("spectrum,n,energy,epsilon\n");
            for (name, lines) in &rows {
                for l in lines {
                    out.push_str(&format!("{name},{},{:.16e},{:.16e}\n", l.n, l.energy, l.epsilon));
                }
            }
            if let Some(c) = truncated {
                eprintln!("note: only {c} bound states exist in sector 1 (E_n bound for n < A)");
            }
            out
        }
        Format::ReportText => {
            let mut out = format!("spectrum of {params}\n");
            for (name, lines) in &rows {
                let levels: Vec<String> =
                    lines.iter().map(|l| format!("E_{} = {} (eps = {:.12})", l.n, l.energy, l.epsilon)).collect();
                out.push_str(&format!("{name}: {}\n", levels.join(", ")));
            }
            if let Some(c) = truncated {
                out.push_str(&format!("note: spectrum truncated, {c} bound state(s) in sector 1\n"));
            }
            out
        }
        Format::ReportTree => {
            let mut tree = serde_json::Map::new();
            tree.insert("family".into(), serde_json::to_value(params).expect("params serialize"));
            for (name, lines) in &rows {
                tree.insert((*name).into(), serde_json::to_value(lines).expect("lines serialize"));
            }
            tree.insert("bound_state_count".into(), serde_json::json!(params.bound_state_count(Sector::One)));
            tree.insert("truncated".into(), serde_json::json!(truncated.is_some()));
            serde_json::to_string_pretty(&tree).expect("tree serializes") + "\n"
        }
    };
    Ok(write_output(run.out.as_deref(), &text)?)
}

fn cmd_verify(run: &RunArgs, k: usize) -> CliResult<()> {
    let params = run.params()?;
    let family = Family::new(params)?;
    let mut config = VerifyConfig::new(params);
    config.levels = k;
    if run.grid_n.is_some() || run.xmin.is_some() || run.xmax.is_some() {
        config.grid = Some(run.grid(&family)?);
    }
    if run.lambda.is_some() {
        config.lambdas = run
            .deformations()?
            .into_iter()
            .filter_map(|d| match d {
                Deformation::Generic(l) => Some(l),
                _ => None,
            })
            .collect();
    }
    let report = verify_family(&config)?;
    let text = match run.format(Format::ReportText) {
        Format::ReportText => report.to_text(),
        Format::ReportTree => serde_json::to_string_pretty(&report.to_tree()).expect("tree serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("name,kind,measured,tolerance,passed\n");
            for c in &report.checks {
                let kind = serde_json::to_value(c.kind).expect("kind serializes");
                out.push_str(&format!(
                    "{},{},{:.16e},{:.16e},{}\n",
                    c.name,
                    kind.as_str().unwrap_or_default(),
                    c.measured,
                    c.tolerance,
                    c.passed
                ));
            }
            out
        }
    };
    write_output(run.out.as_deref(), &text)?;
    if report.passed() {
        Ok(())
    } else {
        for c in report.failures() {
            eprintln!("failed: {} (measured {:.3e} > tolerance {:.1e})", c.name, c.measured, c.tolerance);
        }
        std::io::stderr().flush()?;
        Err(Failure::Checks)
    }
}
