//! Root location for characteristic functions: grid scanning for sign
//! changes, Brent refinement, and the concrete spectra built on them.

use rayon::prelude::*;
use serde::Serialize;

use crate::{Error, Result};

mod dirichlet;
mod oscillator;

pub use dirichlet::{
    annulus_dirichlet_spectrum, box_spectrum_rect, cyl_dirichlet_spectrum, delta_well_bound_state,
    rect_continued_char, shell_dirichlet_spectrum, sph_dirichlet_spectrum,
};
pub use oscillator::{
    oscillator_char_full, oscillator_char_parity, oscillator_char_reduced, oscillator_node_factor,
    oscillator_scan_table, oscillator_spectrum, OscillatorProblem, OscillatorScanRow, SpectrumOptions,
};

/// Default refinement tolerance in the spectral parameter.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Default iteration cap for [`brent`].
pub const DEFAULT_MAX_ITER: usize = 200;

/// Interval on which `f` changes sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        if !(lo < hi) || !(f_lo * f_hi < 0.0) {
            return Err(Error::Invalid(format!(
                "[{lo}, {hi}] with f = ({f_lo}, {f_hi}) is not a sign-change bracket"
            )));
        }
        Ok(Bracket { lo, hi, f_lo, f_hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    /// Zero of the `D_v(α)` node factor (not a box eigenvalue).
    NodeFactor,
    /// Zero of `D_v(-α) + D_v(α)`: an even box state.
    EvenBracket,
    /// Zero of `D_v(-α) - D_v(α)`: an odd box state.
    OddBracket,
    Generic,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::NodeFactor => "node_factor",
            Classification::EvenBracket => "even_bracket",
            Classification::OddBracket => "odd_bracket",
            Classification::Generic => "generic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub value: f64,
    /// `|f(value)|`
    pub residual: f64,
    pub bracket: Bracket,
    pub iterations: usize,
    pub classification: Classification,
}

/// A root together with the energy it corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub root: Root,
    pub energy: f64,
}

/// Result of [`scan_sign_changes`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Scan {
    pub brackets: Vec<Bracket>,
    /// Grid points where `f` failed or was not finite.
    pub skipped: Vec<f64>,
}

/// Evenly spaced grid `lo + i·step`, `i = 0..=round((hi - lo)/step)`;
/// empty when `hi <= lo`.
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0) || !step.is_finite() || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::Invalid(format!("bad grid [{lo}, {hi}] step {step}")));
    }
    if hi <= lo {
        return Ok(Vec::new());
    }
    let n = ((hi - lo) / step).round() as usize;
    Ok((0..=n).map(|i| lo + i as f64 * step).collect())
}

fn evaluate<F>(f: &F, xs: &[f64]) -> Vec<Option<f64>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    xs.par_iter().map(|&x| f(x).ok().filter(|y| y.is_finite())).collect()
}

fn brackets_from_samples(xs: &[f64], ys: &[Option<f64>]) -> Scan {
    let mut scan = Scan::default();
    let mut last: Option<(f64, f64)> = None;
    for (&x, y) in xs.iter().zip(ys) {
        let Some(y) = *y else {
            scan.skipped.push(x);
            continue;
        };
        if y == 0.0 {
            // an exact zero is bracketed by its nonzero neighbours
            continue;
        }
        if let Some((px, py)) = last {
            if (py < 0.0) != (y < 0.0) {
                scan.brackets.push(Bracket { lo: px, hi: x, f_lo: py, f_hi: y });
            }
        }
        last = Some((x, y));
    }
    scan
}

/// Samples `f` on `n_grid` evenly spaced points of `[lo, hi]` and returns a
/// bracket for every sign change between consecutive usable samples.
/// Evaluation runs in parallel; the result does not depend on the number
/// of threads.
pub fn scan_sign_changes<F>(f: F, lo: f64, hi: f64, n_grid: usize) -> Result<Scan>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    if n_grid < 2 || !(lo < hi) {
        return Err(Error::Invalid(format!("scan needs lo < hi and n_grid >= 2 (got [{lo}, {hi}], {n_grid})")));
    }
    let h = (hi - lo) / (n_grid - 1) as f64;
    let xs: Vec<f64> = (0..n_grid).map(|i| if i == n_grid - 1 { hi } else { lo + i as f64 * h }).collect();
    let ys = evaluate(&f, &xs);
    Ok(brackets_from_samples(&xs, &ys))
}

/// Brent's method (inverse quadratic interpolation, secant and bisection)
/// on a sign-change bracket. Stops once the bracket is narrower than
/// `tol` or `f` vanishes exactly.
pub fn brent<F>(f: F, bracket: Bracket, tol: f64, max_iter: usize) -> Result<Root>
where
    F: Fn(f64) -> Result<f64>,
{
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    if !(fa * fb < 0.0) {
        return Err(Error::Invalid(format!("brent: f({a}) = {fa} and f({b}) = {fb} do not bracket a root")));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    let root = |value: f64, fv: f64, iterations| Root {
        value,
        residual: fv.abs(),
        bracket,
        iterations,
        classification: Classification::Generic,
    };
    for iter in 0..max_iter {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol1 || fb == 0.0 {
            return Ok(root(b, fb, iter));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(m) };
        fb = f(b)?;
        if !fb.is_finite() {
            return Err(Error::Numeric { msg: format!("brent: f({b}) is not finite"), best: a });
        }
    }
    Err(Error::Numeric { msg: format!("brent: no convergence in {max_iter} iterations"), best: b })
}

/// Scans `[lo, lo + chunk·k]` for successive `k` until `count` sign changes
/// are found or `limit` is reached, then refines each with [`brent`].
pub(crate) fn first_roots<F>(f: F, lo: f64, limit: f64, step: f64, count: usize, tol: f64) -> Result<Vec<Root>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let chunk = 256.0 * step;
    let mut brackets = Vec::new();
    let mut start = lo;
    while brackets.len() < count && start < limit {
        let end = (start + chunk).min(limit);
        let n = ((end - start) / step).round().max(1.0) as usize + 1;
        brackets.extend(scan_sign_changes(&f, start, end, n)?.brackets);
        start = end;
    }
    brackets.truncate(count);
    brackets.into_iter().map(|b| brent(&f, b, tol, DEFAULT_MAX_ITER)).collect()
}

/// One row of [`char_scan_table`]; `value` is `None` where `f` failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub param: f64,
    pub value: Option<f64>,
}

impl ScanRow {
    pub fn abs(&self) -> Option<f64> {
        self.value.map(f64::abs)
    }

    pub fn sign(&self) -> Option<i8> {
        self.value.map(|v| if v > 0.0 { 1 } else if v < 0.0 { -1 } else { 0 })
    }
}

/// Tabulates `f` on [`grid`]`(lo, hi, step)`.
pub fn char_scan_table<F>(f: F, lo: f64, hi: f64, step: f64) -> Result<Vec<ScanRow>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let xs = grid(lo, hi, step)?;
    let ys = evaluate(&f, &xs);
    Ok(xs.into_iter().zip(ys).map(|(param, value)| ScanRow { param, value }).collect())
}
