//! The `greenchain` command line.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 numerical
//! failure. `GREENCHAIN_THREADS` caps the worker pool used by scans.
//! Command-line flags take precedence over values in a config file.

mod config;
mod csv;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use config::{ChainConfig, CouplingsConfig, InfiniteMarker, OscillatorConfig, Resolved};
pub use csv::{format_number, Cell, CsvTable};

use crate::chain::{greens_finite, greens_strong, Couplings};
use crate::greens::UnitSystem;
use crate::spectrum::{
    annulus_dirichlet_spectrum, box_spectrum_rect, cyl_dirichlet_spectrum, delta_well_bound_state,
    oscillator_scan_table, oscillator_spectrum, shell_dirichlet_spectrum, sph_dirichlet_spectrum, Level,
    OscillatorProblem, SpectrumOptions, DEFAULT_TOL,
};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;

/// Reference energies `E_0 … E_5` (units of ħω0) of the oscillator in a
/// box of length `sqrt(ħ/(mω0))`, as printed to three decimals.
pub const TABLE1_REFERENCE: [f64; 6] = [4.951, 19.774, 44.452, 78.996, 123.410, 177.693];

/// Default tolerance of `table1`, matching the reference rounding.
pub const TABLE1_TOL: f64 = 0.01;

pub const THREADS_ENV: &str = "GREENCHAIN_THREADS";

#[derive(Debug, Parser)]
#[command(name = "greenchain", version, about = "Green's functions and spectra of δ-potential chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, clap::Args)]
struct UnitArgs {
    #[arg(long, default_value_t = 1.0)]
    hbar: f64,
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    #[arg(long, default_value_t = 1.0)]
    omega0: f64,
}

impl UnitArgs {
    fn units(&self) -> Result<UnitSystem> {
        UnitSystem::new(self.hbar, self.mass, self.omega0).map_err(|e| Error::Invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScanGeometry {
    Oscillator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpectrumGeometry {
    Oscillator,
    Box,
    Cylinder,
    Sphere,
    DeltaWell,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate the chain's Green's function g(x, x') at one spectral parameter
    /// (k0 for rectangular/cylindrical/spherical, v for the oscillator).
    Greens {
        config: PathBuf,
        #[arg(allow_negative_numbers = true)]
        x: f64,
        #[arg(allow_negative_numbers = true)]
        xp: f64,
        #[arg(allow_negative_numbers = true)]
        param: f64,
        /// Impenetrable walls, whatever couplings the config lists.
        #[arg(long)]
        strong: bool,
        /// Overrides the config's angular/azimuthal mode.
        #[arg(long)]
        mode: Option<u32>,
    },
    /// Tabulate |s(v)| and |Δ(v)| of the oscillator in a box as CSV.
    Scan {
        #[arg(long, value_enum, default_value = "oscillator")]
        geometry: ScanGeometry,
        /// Box length (default: sqrt(ħ/(mω0))).
        #[arg(long)]
        a: Option<f64>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, default_value_t = 200.0, allow_negative_numbers = true)]
        hi: f64,
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Output file (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        units: UnitArgs,
    },
    /// Compute a spectrum and print `index,root_param,energy,residual,classification`.
    Spectrum {
        #[arg(long, value_enum)]
        geometry: SpectrumGeometry,
        #[arg(long, default_value_t = 6)]
        n_roots: usize,
        /// Root tolerance in the spectral parameter (oscillator only; the
        /// Bessel/box roots are refined to machine precision).
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Box length (oscillator default sqrt(ħ/(mω0)), box default 1).
        #[arg(long)]
        a: Option<f64>,
        /// Outer radius of the disk/ball.
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        /// Inner radius: annulus/shell instead of disk/ball.
        #[arg(long)]
        inner: Option<f64>,
        #[arg(long, default_value_t = 0)]
        mode: u32,
        /// δ-well strength.
        #[arg(long, allow_negative_numbers = true)]
        mu: Option<f64>,
        /// Also list the oscillator's node-factor zeros.
        #[arg(long)]
        node_factor: bool,
        #[command(flatten)]
        units: UnitArgs,
    },
    /// Compare the first six confined-oscillator energies with reference values.
    Table1 {
        #[arg(long, default_value_t = TABLE1_TOL)]
        tol: f64,
    },
}

/// Runs the command line with process stdout/stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_numeric() {
                EXIT_NUMERIC
            } else {
                EXIT_USAGE
            }
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Invalid(format!("{THREADS_ENV} must be an integer >= 1, got {raw:?}")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Greens { config, x, xp, param, strong, mode } => cmd_greens(config, x, xp, param, strong, mode, out),
        Command::Scan { geometry: ScanGeometry::Oscillator, a, lo, hi, step, out: path, units } => {
            cmd_scan(a, lo, hi, step, path, units.units()?, out)
        }
        Command::Spectrum { geometry, n_roots, tol, a, radius, inner, mode, mu, node_factor, units } => {
            let args = SpectrumArgs { n_roots, tol, a, radius, inner, mode, mu, node_factor, units: units.units()? };
            cmd_spectrum(geometry, &args, out)
        }
        Command::Table1 { tol } => cmd_table1(tol, out),
    }
}

fn cmd_greens(
    config: PathBuf,
    x: f64,
    xp: f64,
    param: f64,
    strong: bool,
    mode: Option<u32>,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut cfg = ChainConfig::load(&config)?;
    if mode.is_some() {
        cfg.mode = mode;
    }
    let Resolved { chain, g0 } = cfg.resolve()?;
    let g = if strong || *chain.couplings() == Couplings::AllInfinite {
        greens_strong(&chain, g0.as_ref(), x, xp, param)?
    } else {
        greens_finite(&chain, g0.as_ref(), x, xp, param)?
    };
    writeln!(out, "{}", format_number(g))?;
    Ok(EXIT_OK)
}

fn oscillator_problem(a: Option<f64>, units: UnitSystem) -> Result<OscillatorProblem> {
    match a {
        Some(a) => OscillatorProblem::new(a, units),
        None => OscillatorProblem::unit_box(units),
    }
}

fn cmd_scan(
    a: Option<f64>,
    lo: f64,
    hi: f64,
    step: f64,
    path: Option<PathBuf>,
    units: UnitSystem,
    out: &mut dyn Write,
) -> Result<i32> {
    if lo > hi {
        return Err(Error::Invalid(format!("--lo {lo} exceeds --hi {hi}")));
    }
    let prob = oscillator_problem(a, units)?;
    let mut table = CsvTable::new(vec!["v", "abs_reduced", "abs_full"]);
    for row in oscillator_scan_table(&prob, lo, hi, step)? {
        table.push(vec![Cell::Num(row.v), row.abs_reduced.into(), row.abs_full.into()]);
    }
    let text = table.render();
    match path {
        Some(p) => std::fs::write(&p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

struct SpectrumArgs {
    n_roots: usize,
    tol: f64,
    a: Option<f64>,
    radius: f64,
    inner: Option<f64>,
    mode: u32,
    mu: Option<f64>,
    node_factor: bool,
    units: UnitSystem,
}

fn spectrum_levels(geometry: SpectrumGeometry, s: &SpectrumArgs) -> Result<Vec<Level>> {
    let u = &s.units;
    match geometry {
        SpectrumGeometry::Oscillator => {
            if !(s.tol > 0.0) {
                return Err(Error::Invalid(format!("--tol must be positive, got {}", s.tol)));
            }
            let opts = SpectrumOptions { tol: s.tol, node_factor: s.node_factor, ..Default::default() };
            oscillator_spectrum(&oscillator_problem(s.a, *u)?, s.n_roots, &opts)
        }
        SpectrumGeometry::Box => box_spectrum_rect(s.a.unwrap_or(1.0), s.n_roots, u),
        SpectrumGeometry::Cylinder => match s.inner {
            Some(r) => annulus_dirichlet_spectrum(r, s.radius, s.mode, s.n_roots, u),
            None => cyl_dirichlet_spectrum(s.radius, s.mode, s.n_roots, u),
        },
        SpectrumGeometry::Sphere => match s.inner {
            Some(r) => shell_dirichlet_spectrum(r, s.radius, s.mode, s.n_roots, u),
            None => sph_dirichlet_spectrum(s.radius, s.mode, s.n_roots, u),
        },
        SpectrumGeometry::DeltaWell => {
            let mu = s.mu.ok_or_else(|| Error::Invalid("delta-well needs --mu".into()))?;
            Ok(delta_well_bound_state(mu, u)?.into_iter().collect())
        }
    }
}

fn cmd_spectrum(geometry: SpectrumGeometry, args: &SpectrumArgs, out: &mut dyn Write) -> Result<i32> {
    let levels = spectrum_levels(geometry, args)?;
    let mut table = CsvTable::new(vec!["index", "root_param", "energy", "residual", "classification"]);
    for (i, l) in levels.iter().enumerate() {
        table.push(vec![
            Cell::Int(i),
            Cell::Num(l.root.value),
            Cell::Num(l.energy),
            Cell::Num(l.root.residual),
            Cell::Text(l.root.classification.as_str().into()),
        ]);
    }
    out.write_all(table.render().as_bytes())?;
    Ok(EXIT_OK)
}

/// Computed `E_0 … E_5` (units of ħω0) compared by `table1`.
pub fn table1_energies() -> Result<Vec<f64>> {
    let prob = OscillatorProblem::unit_box(UnitSystem::natural())?;
    let levels = oscillator_spectrum(&prob, TABLE1_REFERENCE.len(), &SpectrumOptions::default())?;
    if levels.len() < TABLE1_REFERENCE.len() {
        return Err(Error::Numeric {
            msg: format!("only {} of {} levels found", levels.len(), TABLE1_REFERENCE.len()),
            best: levels.last().map_or(f64::NAN, |l| l.energy),
        });
    }
    Ok(levels.iter().map(|l| l.energy).collect())
}

fn cmd_table1(tol: f64, out: &mut dyn Write) -> Result<i32> {
    if !(tol >= 0.0) {
        return Err(Error::Invalid(format!("--tol must be non-negative, got {tol}")));
    }
    let energies = table1_energies()?;
    writeln!(out, "{:>3}  {:>14}  {:>10}  {:>10}", "n", "computed", "reference", "abs_diff")?;
    let mut worst = 0f64;
    for (n, (e, r)) in energies.iter().zip(TABLE1_REFERENCE).enumerate() {
        let d = (e - r).abs();
        worst = worst.max(d);
        writeln!(out, "{n:>3}  {e:>14.9}  {r:>10.3}  {d:>10.2e}")?;
    }
    if worst <= tol {
        Ok(EXIT_OK)
    } else {
        Err(Error::Numeric { msg: format!("largest deviation {worst:.3e} exceeds tolerance {tol:e}"), best: worst })
    }
}
