//! Harmonic oscillator confined to a box `[0, a]` with its minimum at the
//! box centre.
//!
//! Writing `D_v(±α) = e^{-α²/4} (A ± B)` with `A = D_v(0) M(-v/2, ½, α²/2)`
//! and `B = D_v'(0) α M((1-v)/2, 3/2, α²/2)`, the Dirichlet condition on
//! both walls factorises into an even branch (`A = 0`) and an odd branch
//! (`B = 0`). `D_v(0)` and `D_v'(0)` carry `1/Γ` factors that vanish at
//! integer `v`, where `D_v` has definite parity and `D_v(-α)² = D_v(α)²`
//! holds trivially; the physical spectrum is therefore located on the
//! Kummer factors alone.

use std::f64::consts::PI;

use serde::Serialize;

use super::{first_roots, grid, Classification, Level, Root, DEFAULT_TOL};
use crate::greens::UnitSystem;
use crate::specfun::{kummer_m, pcf_kummer_parts, SignLog, PCF_V_RANGE};
use crate::{Error, Result};

/// Largest root count accepted by [`oscillator_spectrum`].
pub const MAX_OSCILLATOR_ROOTS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorProblem {
    box_length: f64,
    units: UnitSystem,
    alpha: f64,
}

impl OscillatorProblem {
    pub fn new(box_length: f64, units: UnitSystem) -> Result<Self> {
        units.validate()?;
        if !(box_length > 0.0) || !box_length.is_finite() {
            return Err(Error::Invalid(format!("box length must be positive, got {box_length}")));
        }
        let alpha = 0.5 * units.oscillator_scale() * box_length;
        Ok(OscillatorProblem { box_length, units, alpha })
    }

    /// Box of length `sqrt(ħ/(mω0))`, i.e. `α = 1/√2`.
    pub fn unit_box(units: UnitSystem) -> Result<Self> {
        Self::new((units.hbar / (units.mass * units.omega0)).sqrt(), units)
    }

    pub fn box_length(&self) -> f64 {
        self.box_length
    }

    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    /// Dimensionless half-width `sqrt(2mω0/ħ)·a/2`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `E = (v + 1/2) ħω0`.
    pub fn energy(&self, v: f64) -> f64 {
        (v + 0.5) * self.units.hbar * self.units.omega0
    }
}

/// `(A, B)` as defined in the module docs.
fn even_odd_parts(v: f64, alpha: f64) -> Result<(SignLog, SignLog)> {
    let p = pcf_kummer_parts(v, alpha)?;
    let a = p.value_at_origin * SignLog::from_f64(p.even_series);
    let b = p.slope_at_origin * SignLog::from_f64(alpha * p.odd_series);
    Ok((a, b))
}

/// `(x, y) / sqrt(x² + y²)` for two SignLogs; `(0, 0)` stays zero.
fn normalise(x: SignLog, y: SignLog) -> (f64, f64) {
    if x.is_zero() && y.is_zero() {
        return (0.0, 0.0);
    }
    let top = x.log_mag().max(y.log_mag());
    let xs = x.scale_ln(-top).to_f64_lossy();
    let ys = y.scale_ln(-top).to_f64_lossy();
    let n = xs.hypot(ys);
    (xs / n, ys / n)
}

/// `r(v) = [D_v(-α)² - D_v(α)²] / [D_v(-α)² + D_v(α)²]`, bounded in
/// `[-1, 1]`. Carries the same sign as the full characteristic function,
/// but also vanishes at every non-negative integer `v`.
pub fn oscillator_char_reduced(v: f64, prob: &OscillatorProblem) -> Result<f64> {
    let (a, b) = even_odd_parts(v, prob.alpha)?;
    let (x, y) = normalise(a, b);
    Ok(-2.0 * x * y)
}

/// `s(v) = 2EO / (E² + O²)` with `E = M(-v/2, ½, α²/2)` and
/// `O = α M((1-v)/2, 3/2, α²/2)`: the characteristic function stripped of
/// its `Γ` factors. Its zeros are exactly the box eigenvalues and
/// `sign s = sign Γ(-v) · sign r`.
pub fn oscillator_char_parity(v: f64, prob: &OscillatorProblem) -> Result<f64> {
    let (e, o) = kummer_factors(v, prob.alpha)?;
    let n = e.hypot(o);
    if n == 0.0 {
        return Ok(0.0);
    }
    Ok(2.0 * (e / n) * (o / n))
}

fn kummer_factors(v: f64, alpha: f64) -> Result<(f64, f64)> {
    if !(v >= PCF_V_RANGE.0 && v <= PCF_V_RANGE.1) {
        return Err(Error::Domain(format!("order v = {v} outside [-1, 200]")));
    }
    let z = 0.5 * alpha * alpha;
    Ok((kummer_m(-0.5 * v, 0.5, z)?, alpha * kummer_m(0.5 * (1.0 - v), 1.5, z)?))
}

/// `D_v(α)` scaled to `[-1, 1]`; its zeros are the node-factor zeros.
pub fn oscillator_node_factor(v: f64, prob: &OscillatorProblem) -> Result<f64> {
    let (a, b) = even_odd_parts(v, prob.alpha)?;
    let (x, y) = normalise(a, b);
    Ok(x + y)
}

/// `Δ(v) = (m/(πħω0)) Γ²(-v) D_v²(α) [D_v²(-α) - D_v²(α)]`.
/// Poles at non-negative integers are domain errors. The factors are
/// combined in log form, so only a product that itself leaves double
/// range is a range error.
pub fn oscillator_char_full(v: f64, prob: &OscillatorProblem) -> Result<f64> {
    full_signlog(v, prob)?.to_f64().map_err(|_| {
        Error::Range(format!("characteristic function overflows at v = {v}; use the reduced form"))
    })
}

fn full_signlog(v: f64, prob: &OscillatorProblem) -> Result<SignLog> {
    if v >= 0.0 && v.fract() == 0.0 {
        return Err(Error::Domain(format!("Γ(-v) has a pole at v = {v}")));
    }
    let u = prob.units;
    let (a, b) = even_odd_parts(v, prob.alpha)?;
    let (lg, sg) = crate::specfun::ln_gamma(-v)?;
    let gamma = SignLog::new(sg, lg);
    // D_v(α) = e^{-α²/4}(A + B);  D_v(-α)² - D_v(α)² = -4 e^{-α²/2} A B
    let damp = -0.25 * prob.alpha * prob.alpha;
    let node = a.add(&b).scale_ln(damp);
    let diff = -(a * b).scale_ln(4f64.ln() + 2.0 * damp);
    let prefactor = (u.mass / (PI * u.hbar * u.omega0)).ln();
    Ok((gamma * gamma * node * node * diff).scale_ln(prefactor))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumOptions {
    pub step: f64,
    pub tol: f64,
    /// Also report the first `n_roots` zeros of the `D_v(α)` node factor.
    pub node_factor: bool,
}

impl Default for SpectrumOptions {
    fn default() -> Self {
        SpectrumOptions { step: 0.01, tol: DEFAULT_TOL, node_factor: false }
    }
}

/// First `n_roots` box eigenvalues `v` (scan of [`oscillator_char_parity`]
/// over the whole validated order range, then Brent), in increasing order.
/// Fewer are returned when the range holds fewer. Node-factor zeros, when
/// requested, follow the eigenvalues (at most `n_roots` of them).
pub fn oscillator_spectrum(prob: &OscillatorProblem, n_roots: usize, opts: &SpectrumOptions) -> Result<Vec<Level>> {
    if n_roots > MAX_OSCILLATOR_ROOTS {
        return Err(Error::Invalid(format!("at most {MAX_OSCILLATOR_ROOTS} oscillator roots are supported")));
    }
    let (lo, hi) = PCF_V_RANGE;
    let f = |v| oscillator_char_parity(v, prob);
    let mut levels = Vec::new();
    for mut root in first_roots(f, lo, hi, opts.step, n_roots, opts.tol)? {
        let (e_lo, o_lo) = kummer_factors(root.bracket.lo, prob.alpha)?;
        let (e_hi, o_hi) = kummer_factors(root.bracket.hi, prob.alpha)?;
        root.classification = if e_lo * e_hi <= 0.0 {
            Classification::EvenBracket
        } else if o_lo * o_hi <= 0.0 {
            Classification::OddBracket
        } else {
            Classification::Generic
        };
        levels.push(level(prob, root));
    }
    if opts.node_factor {
        let f = |v| oscillator_node_factor(v, prob);
        for mut root in first_roots(f, lo, hi, opts.step, n_roots, opts.tol)? {
            root.classification = Classification::NodeFactor;
            levels.push(level(prob, root));
        }
    }
    Ok(levels)
}

fn level(prob: &OscillatorProblem, root: Root) -> Level {
    Level { energy: prob.energy(root.value), root }
}

/// One row of the oscillator scan table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorScanRow {
    pub v: f64,
    /// `|s(v)|` ([`oscillator_char_parity`]); zeros are the eigenvalues.
    pub abs_reduced: Option<f64>,
    /// `|Δ(v)|`; `None` at poles and beyond double range.
    pub abs_full: Option<f64>,
}

/// `|s(v)|` and `|Δ(v)|` on [`grid`]`(lo, hi, step)`.
pub fn oscillator_scan_table(prob: &OscillatorProblem, lo: f64, hi: f64, step: f64) -> Result<Vec<OscillatorScanRow>> {
    use rayon::prelude::*;
    let vs = grid(lo, hi, step)?;
    Ok(vs
        .par_iter()
        .map(|&v| {
            let finite = |r: Result<f64>| r.ok().filter(|x| x.is_finite()).map(f64::abs);
            OscillatorScanRow {
                v,
                abs_reduced: finite(oscillator_char_parity(v, prob)),
                abs_full: finite(oscillator_char_full(v, prob)),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{gamma, pcf_d};

    fn unit() -> OscillatorProblem {
        OscillatorProblem::unit_box(UnitSystem::natural()).unwrap()
    }

    #[test]
    fn alpha_of_unit_box() {
        assert!((unit().alpha() - 0.5f64.sqrt()).abs() < 1e-15);
        let u = UnitSystem::new(2.0, 0.5, 3.0).unwrap();
        assert!((OscillatorProblem::unit_box(u).unwrap().alpha() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(OscillatorProblem::new(0.0, UnitSystem::natural()).is_err());
    }

    #[test]
    fn full_matches_direct_evaluation() {
        let p = unit();
        let a = p.alpha();
        for &v in &[0.5, 1.7, 4.3, 9.9] {
            let (dp, dm) = (pcf_d(v, a).unwrap(), pcf_d(v, -a).unwrap());
            let g = gamma(-v).unwrap();
            let want = g * g * dp * dp * (dm * dm - dp * dp) / PI;
            let got = oscillator_char_full(v, &p).unwrap();
            assert!((got - want).abs() <= 1e-9 * want.abs(), "v={v}: {got} vs {want}");
            // reduced × Γ² × normaliser
            let r = oscillator_char_reduced(v, &p).unwrap();
            let from_r = r * g * g * dp * dp * (dm * dm + dp * dp) / PI;
            assert!((from_r - want).abs() <= 1e-9 * want.abs());
        }
    }

    #[test]
    fn full_poles_and_overflow() {
        let p = unit();
        assert!(matches!(oscillator_char_full(3.0, &p), Err(Error::Domain(_))));
        assert!(oscillator_char_full(3.0 - 1e-9, &p).unwrap().abs() > oscillator_char_full(2.9, &p).unwrap().abs());
        // D_v(α)² alone overflows near the sixth root, the product does not
        assert!(crate::specfun::pcf_d_signlog(177.3, p.alpha()).unwrap().powi(2).to_f64().is_err());
        let full = oscillator_char_full(177.3, &p).unwrap();
        assert!(full.is_finite() && full.signum() == oscillator_char_reduced(177.3, &p).unwrap().signum());
    }

    #[test]
    fn reduced_properties() {
        let p = unit();
        assert!(oscillator_char_reduced(4.40, &p).unwrap() * oscillator_char_reduced(4.50, &p).unwrap() < 0.0);
        let flat = OscillatorProblem::new(1e-9, UnitSystem::natural()).unwrap();
        assert!(oscillator_char_reduced(3.3, &flat).unwrap().abs() < 1e-8);
        // spurious zeros of r at integer v
        assert_eq!(oscillator_char_reduced(2.0, &p).unwrap(), 0.0);
        assert!(oscillator_char_parity(2.0, &p).unwrap() != 0.0);
        for &v in &[0.3, 7.7, 150.2] {
            let r = oscillator_char_reduced(v, &p).unwrap();
            assert!(r.abs() <= 1.0);
        }
    }

    #[test]
    fn unit_box_spectrum() {
        let p = unit();
        let levels = oscillator_spectrum(&p, 6, &SpectrumOptions::default()).unwrap();
        let want = [4.45, 19.27, 43.95, 78.49, 122.91, 177.19];
        assert_eq!(levels.len(), 6);
        for (l, w) in levels.iter().zip(want) {
            assert!((l.root.value - w).abs() < 0.01, "{} vs {w}", l.root.value);
            assert!((l.energy - l.root.value - 0.5).abs() < 1e-12);
        }
        let kinds: Vec<_> = levels.iter().map(|l| l.root.classification).collect();
        for (i, k) in kinds.iter().enumerate() {
            let want = if i % 2 == 0 { Classification::EvenBracket } else { Classification::OddBracket };
            assert_eq!(*k, want);
        }
        // only six eigenvalues fit below v = 200
        assert_eq!(oscillator_spectrum(&p, 12, &SpectrumOptions::default()).unwrap().len(), 6);
        assert!(oscillator_spectrum(&p, 13, &SpectrumOptions::default()).is_err());
    }

    #[test]
    fn wide_box_recovers_free_oscillator() {
        let p = OscillatorProblem::new(10.0, UnitSystem::natural()).unwrap();
        let levels = oscillator_spectrum(&p, 2, &SpectrumOptions::default()).unwrap();
        assert!(levels[0].root.value.abs() < 0.05, "{}", levels[0].root.value);
        assert!((levels[1].root.value - 1.0).abs() < 0.05, "{}", levels[1].root.value);
    }

    #[test]
    fn node_factor_zeros_are_flagged() {
        let p = unit();
        let opts = SpectrumOptions { node_factor: true, ..Default::default() };
        let levels = oscillator_spectrum(&p, 6, &opts).unwrap();
        let nodes: Vec<_> = levels.iter().filter(|l| l.root.classification == Classification::NodeFactor).collect();
        assert!(!nodes.is_empty());
        for n in nodes {
            let d = crate::specfun::pcf_d_signlog(n.root.value, p.alpha()).unwrap();
            let d_near = crate::specfun::pcf_d_signlog(n.root.value + 0.01, p.alpha()).unwrap();
            assert!(d.log_mag() < d_near.log_mag());
        }
    }

    #[test]
    fn scan_table_columns() {
        let rows = oscillator_scan_table(&unit(), 0.0, 3.0, 0.5).unwrap();
        assert_eq!(rows.len(), 7);
        assert!(rows[0].abs_full.is_none() && rows[2].abs_full.is_none());
        assert!(rows[1].abs_full.is_some() && rows[1].abs_reduced.is_some());
    }
}
