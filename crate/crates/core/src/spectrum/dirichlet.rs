//! Impenetrable-wall spectra from the oscillatory continuation `k0 → iκ`
//! of the boundary determinants, and the single-δ bound state.
//!
//! Continuing `e^{-k0|z-z'|}/(2k0)` to `k0 = iκ` turns the two-wall
//! determinant into a multiple of `sin(κa)/κ`; the cylindrical and
//! spherical kernels continue to ordinary Bessel functions, so the disk
//! and ball conditions become `J_m(κb) = 0` and `j_l(κc) = 0`, and the
//! annulus/shell conditions the `J·Y` cross products.

use super::{brent, first_roots, Bracket, Level, Root, DEFAULT_MAX_ITER};
use crate::chain::{boundary_matrix, lambda_matrix, lu, Couplings, DeltaChain};
use crate::greens::{Geometry, RectangularGreens, UnitSystem};
use crate::specfun::{bessel_jy, sph_ordinary};
use crate::{Error, Result};

/// Points per expected zero spacing when scanning oscillatory functions.
const SAMPLES_PER_ZERO: f64 = 32.0;

fn check_length(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Invalid(format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

/// Tight tolerance relative to the expected root scale.
fn root_tol(scale: f64) -> f64 {
    4.0 * f64::EPSILON * scale
}

/// Roots of an oscillatory `f(κ)` whose zeros are spaced about `π/len`
/// apart, starting just above `κ = 0`.
fn oscillatory_roots<F>(f: F, len: f64, extra: f64, count: usize) -> Result<Vec<Root>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    let spacing = std::f64::consts::PI / len;
    let step = spacing / SAMPLES_PER_ZERO;
    let limit = extra / len + (count as f64 + 2.0) * spacing;
    let tol = root_tol(limit);
    let roots = first_roots(f, 0.5 * step, limit, step, count, tol)?;
    if roots.len() < count {
        return Err(Error::Numeric {
            msg: format!("found {} of {count} roots below κ = {limit}", roots.len()),
            best: roots.last().map_or(f64::NAN, |r| r.value),
        });
    }
    Ok(roots)
}

fn levels(roots: Vec<Root>, units: &UnitSystem) -> Vec<Level> {
    roots.into_iter().map(|root| Level { energy: units.kinetic_energy(root.value), root }).collect()
}

/// Continued two-wall rectangular characteristic function `sin(κa)/κ`.
pub fn rect_continued_char(kappa: f64, a: f64) -> f64 {
    (kappa * a).sin() / kappa
}

/// Particle in a box of length `a`: `κ_j = jπ/a`, `E_j = ħ²κ_j²/(2m)`.
pub fn box_spectrum_rect(a: f64, n: usize, units: &UnitSystem) -> Result<Vec<Level>> {
    check_length("box length", a)?;
    units.validate()?;
    let roots = oscillatory_roots(|k| Ok(rect_continued_char(k, a)), a, 0.0, n)?;
    Ok(levels(roots, units))
}

/// Disk of radius `b`, azimuthal mode `m`: zeros of `J_m(κb)`.
pub fn cyl_dirichlet_spectrum(b: f64, mode: u32, n: usize, units: &UnitSystem) -> Result<Vec<Level>> {
    check_length("radius", b)?;
    let f = |k: f64| Ok(bessel_jy(mode, k * b)?.0);
    // J_m has no zeros below κb = m
    Ok(levels(oscillatory_roots(f, b, f64::from(mode), n)?, units))
}

/// Ball of radius `c`, angular mode `l`: zeros of `j_l(κc)`.
pub fn sph_dirichlet_spectrum(c: f64, l: u32, n: usize, units: &UnitSystem) -> Result<Vec<Level>> {
    check_length("radius", c)?;
    let f = |k: f64| Ok(sph_ordinary(l, k * c)?.0);
    Ok(levels(oscillatory_roots(f, c, f64::from(l), n)?, units))
}

fn check_annulus(inner: f64, outer: f64) -> Result<()> {
    check_length("inner radius", inner)?;
    if !(outer > inner) || !outer.is_finite() {
        return Err(Error::Invalid(format!("outer radius {outer} must exceed inner radius {inner}")));
    }
    Ok(())
}

/// Annulus `inner < ρ < outer`: zeros of `J_m(κb₁)Y_m(κb₂) - J_m(κb₂)Y_m(κb₁)`.
pub fn annulus_dirichlet_spectrum(
    inner: f64,
    outer: f64,
    mode: u32,
    n: usize,
    units: &UnitSystem,
) -> Result<Vec<Level>> {
    check_annulus(inner, outer)?;
    let f = |k: f64| {
        let (j1, y1) = bessel_jy(mode, k * inner)?;
        let (j2, y2) = bessel_jy(mode, k * outer)?;
        // κ·b₁ scaling keeps the cross product O(1) near κ → 0
        Ok((j1 * y2 - j2 * y1) * k * inner)
    };
    Ok(levels(oscillatory_roots(f, outer - inner, 0.0, n)?, units))
}

/// Spherical shell `inner < r < outer`: zeros of `j_l(κc₁)y_l(κc₂) - j_l(κc₂)y_l(κc₁)`.
pub fn shell_dirichlet_spectrum(
    inner: f64,
    outer: f64,
    l: u32,
    n: usize,
    units: &UnitSystem,
) -> Result<Vec<Level>> {
    check_annulus(inner, outer)?;
    let f = |k: f64| {
        let (j1, y1) = sph_ordinary(l, k * inner)?;
        let (j2, y2) = sph_ordinary(l, k * outer)?;
        Ok((j1 * y2 - j2 * y1) * k * inner * k * outer)
    };
    Ok(levels(oscillatory_roots(f, outer - inner, 0.0, n)?, units))
}

/// Bound state of a single δ-well of strength `mu < 0`, located as the
/// zero of `det Λ(k0) = 1 + λ/(2k0)`. `None` for `mu >= 0`.
pub fn delta_well_bound_state(mu: f64, units: &UnitSystem) -> Result<Option<Level>> {
    units.validate()?;
    if !mu.is_finite() {
        return Err(Error::Invalid(format!("coupling must be finite, got {mu}")));
    }
    let lambda = units.coupling_factor() * mu;
    if lambda >= 0.0 {
        return Ok(None);
    }
    let chain =
        DeltaChain::with_couplings(Geometry::Rectangular, vec![0.0], Couplings::Finite(vec![lambda]), *units)?;
    let det = |k0: f64| -> Result<f64> {
        let g0m = boundary_matrix(&chain, &RectangularGreens, k0)?;
        match lu(&lambda_matrix(&g0m, &chain, &RectangularGreens)?.entries) {
            Ok(f) => f.det().to_f64(),
            Err(Error::Singular { .. }) => Ok(0.0),
            Err(e) => Err(e),
        }
    };
    let (lo, hi) = (1e-6 * lambda.abs(), lambda.abs());
    let bracket = Bracket::new(lo, hi, det(lo)?, det(hi)?)?;
    let root = brent(det, bracket, root_tol(hi), DEFAULT_MAX_ITER)?;
    Ok(Some(Level { energy: -units.kinetic_energy(root.value), root }))
}
