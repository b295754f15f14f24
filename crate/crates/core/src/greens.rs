//! Free-space reduced Green's functions.
//!
//! Each `g0` solves its geometry's 1D operator with a unit source,
//!
//! | geometry    | operator                                             | source              |
//! |-------------|------------------------------------------------------|---------------------|
//! | rectangular | `d²/dz² - k0²`                                       | `-δ(z - z')`        |
//! | cylindrical | `d²/dρ² + (1/ρ) d/dρ - m²/ρ² - k0²`                  | `-δ(ρ - ρ')/ρ`      |
//! | spherical   | `d²/dr² + (2/r) d/dr - l(l+1)/r² - k0²`              | `-δ(r - r')/r²`     |
//! | oscillator  | `d²/dz² - (mω0/ħ)² (z - c)² + 2mω/ħ`                 | `-δ(z - z')`        |
//!
//! and decays away from the origin of its coordinate. All are symmetric in
//! their two position arguments.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{ln_bessel_i_nu, ln_bessel_k_nu, ln_gamma, pcf_d_signlog, SignLog};

/// Physical constants the reduced equations are written in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitSystem {
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub mass: f64,
    #[serde(default = "one")]
    pub omega0: f64,
}

fn one() -> f64 {
    1.0
}

impl Default for UnitSystem {
    fn default() -> Self {
        UnitSystem { hbar: 1.0, mass: 1.0, omega0: 1.0 }
    }
}

impl UnitSystem {
    pub fn new(hbar: f64, mass: f64, omega0: f64) -> Result<Self> {
        let u = UnitSystem { hbar, mass, omega0 };
        u.validate()?;
        Ok(u)
    }

    pub fn natural() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("hbar", self.hbar), ("mass", self.mass), ("omega0", self.omega0)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Domain(format!("unit {name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    /// `2m/ħ²`: converts a potential strength `μ` into the coupling `λ`
    /// that multiplies `δ` in the reduced equation.
    pub fn coupling_factor(&self) -> f64 {
        2.0 * self.mass / (self.hbar * self.hbar)
    }

    /// `2mω/ħ` for a frequency `ω`.
    pub fn frequency_term(&self, omega: f64) -> f64 {
        2.0 * self.mass * omega / self.hbar
    }

    /// Inverse oscillator length `sqrt(2mω0/ħ)` mapping `z - c` to `y`.
    pub fn oscillator_scale(&self) -> f64 {
        (2.0 * self.mass * self.omega0 / self.hbar).sqrt()
    }

    /// `E = ħ²k²/(2m)`.
    pub fn kinetic_energy(&self, k: f64) -> f64 {
        self.hbar * self.hbar * k * k / (2.0 * self.mass)
    }
}

/// Where a [`Wavenumber`] came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WavenumberSource {
    Direct,
    Rectangular { kx: f64, ky: f64, omega: f64 },
    Cylindrical { kz: f64, omega: f64 },
    Spherical { omega: f64 },
}

/// Decay constant `k0 > 0` of the evanescent regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wavenumber {
    k0: f64,
    source: WavenumberSource,
}

impl Wavenumber {
    pub fn new(k0: f64) -> Result<Self> {
        if !(k0 > 0.0) || !k0.is_finite() {
            return Err(Error::Domain(format!("k0 must be positive and finite, got {k0}")));
        }
        Ok(Wavenumber { k0, source: WavenumberSource::Direct })
    }

    /// `k0² = kx² + ky² - 2mω/ħ`
    pub fn rectangular(kx: f64, ky: f64, omega: f64, units: &UnitSystem) -> Result<Self> {
        let sq = kx * kx + ky * ky - units.frequency_term(omega);
        Self::from_squared(sq, WavenumberSource::Rectangular { kx, ky, omega })
    }

    /// `k0² = kz² - 2mω/ħ`
    pub fn cylindrical(kz: f64, omega: f64, units: &UnitSystem) -> Result<Self> {
        let sq = kz * kz - units.frequency_term(omega);
        Self::from_squared(sq, WavenumberSource::Cylindrical { kz, omega })
    }

    /// `k0² = -2mω/ħ`
    pub fn spherical(omega: f64, units: &UnitSystem) -> Result<Self> {
        let sq = -units.frequency_term(omega);
        Self::from_squared(sq, WavenumberSource::Spherical { omega })
    }

    fn from_squared(sq: f64, source: WavenumberSource) -> Result<Self> {
        if !(sq > 0.0) || !sq.is_finite() {
            return Err(Error::Domain(format!(
                "k0² = {sq} is not positive; only the evanescent regime is supported"
            )));
        }
        Ok(Wavenumber { k0: sq.sqrt(), source })
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn source(&self) -> WavenumberSource {
        self.source
    }
}

/// Coordinate system of a δ-chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Rectangular,
    Cylindrical,
    Spherical,
    Oscillator,
    Custom,
}

impl Geometry {
    /// Closed interval of admissible positions.
    pub fn domain(self) -> Interval {
        match self {
            Geometry::Cylindrical | Geometry::Spherical => Interval::new(0.0, f64::INFINITY, false),
            _ => Interval::new(f64::NEG_INFINITY, f64::INFINITY, true),
        }
    }

    /// Measure factor multiplying `λ` in the coupling matrix: 1, ρ or r².
    pub fn weight(self, position: f64) -> Result<f64> {
        if !self.domain().contains(position) {
            return Err(Error::Domain(format!("position {position} outside {self:?} domain")));
        }
        Ok(match self {
            Geometry::Cylindrical => position,
            Geometry::Spherical => position * position,
            _ => 1.0,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Geometry::Rectangular => "rectangular",
            Geometry::Cylindrical => "cylindrical",
            Geometry::Spherical => "spherical",
            Geometry::Oscillator => "oscillator",
            Geometry::Custom => "custom",
        }
    }
}

/// See [`Geometry::weight`].
pub fn weight(geometry: Geometry, position: f64) -> Result<f64> {
    geometry.weight(position)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    /// Whether `lo` itself is admissible.
    pub lo_closed: bool,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, lo_closed: bool) -> Self {
        Interval { lo, hi, lo_closed }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed { x >= self.lo } else { x > self.lo };
        above && x <= self.hi && x.is_finite()
    }
}

/// `e^{-k0|z - z'|} / (2 k0)`
pub fn g0_rect(z: f64, zp: f64, k0: Wavenumber) -> f64 {
    let k = k0.k0();
    (-k * (z - zp).abs()).exp() / (2.0 * k)
}

fn ordered_radii(a: f64, b: f64) -> Result<(f64, f64)> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("radii must be positive, got {a} and {b}")));
    }
    Ok(if a <= b { (a, b) } else { (b, a) })
}

/// `I_m(k0 ρ<) K_m(k0 ρ>)`
pub fn g0_cyl(rho: f64, rhop: f64, k0: Wavenumber, mode: u32) -> Result<f64> {
    let (lo, hi) = ordered_radii(rho, rhop)?;
    let k = k0.k0();
    let nu = f64::from(mode);
    Ok((ln_bessel_i_nu(nu, k * lo) + ln_bessel_k_nu(nu, k * hi)).exp())
}

/// `(2 k0/π) i_l(k0 r<) k_l(k0 r>)`, with `i_l`, `k_l` in the
/// `sqrt(π/2x)` convention of [`crate::specfun::sph_modified`]. The prefactor
/// makes the derivative jump across `r'` equal `-1/r'²`.
pub fn g0_sph(r: f64, rp: f64, k0: Wavenumber, l: u32) -> Result<f64> {
    let (lo, hi) = ordered_radii(r, rp)?;
    let k = k0.k0();
    let nu = f64::from(l) + 0.5;
    // i_l(x) k_l(y) = (π/2) / sqrt(x y) I_nu(x) K_nu(y)
    let (x, y) = (k * lo, k * hi);
    let ln = ln_bessel_i_nu(nu, x) + ln_bessel_k_nu(nu, y) - 0.5 * (x * y).ln();
    Ok(k * ln.exp())
}

/// Unconstrained oscillator Green's function
/// `C Γ(-v) D_v(-y<) D_v(y>)`, `y = sqrt(2mω0/ħ)(z - center)`,
/// with `C = sqrt(ħ/(mω0)) / (2 sqrt(π))` fixed by a unit derivative jump.
///
/// `v = E/(ħω0) - 1/2`; non-negative integers are poles of `Γ(-v)`.
pub fn g0_osc(z: f64, zp: f64, v: f64, units: &UnitSystem, center: f64) -> Result<f64> {
    g0_osc_signlog(z, zp, v, units, center)?.to_f64()
}

pub(crate) fn g0_osc_signlog(
    z: f64,
    zp: f64,
    v: f64,
    units: &UnitSystem,
    center: f64,
) -> Result<SignLog> {
    let (lg, sg) = ln_gamma(-v)?;
    let scale = units.oscillator_scale();
    let (y1, y2) = (scale * (z - center), scale * (zp - center));
    let (ylo, yhi) = if y1 <= y2 { (y1, y2) } else { (y2, y1) };
    let d_lo = pcf_d_signlog(v, -ylo)?;
    let d_hi = pcf_d_signlog(v, yhi)?;
    let ln_c = 0.5 * (units.hbar / (units.mass * units.omega0)).ln() - (2.0 * PI.sqrt()).ln();
    Ok((SignLog::new(sg, lg) * d_lo * d_hi).scale_ln(ln_c))
}

/// A free-space reduced Green's function with its geometry's measure.
///
/// `param` is the spectral parameter: `k0` for the Helmholtz-type
/// geometries, `v` for the oscillator, free-form for custom operators.
pub trait FreeGreens: Send + Sync {
    fn geometry(&self) -> Geometry;

    fn eval(&self, x: f64, xp: f64, param: f64) -> Result<f64>;

    fn weight(&self, position: f64) -> Result<f64> {
        self.geometry().weight(position)
    }

    fn domain(&self) -> Interval {
        self.geometry().domain()
    }

    /// Azimuthal `m` or angular `l`, where the geometry has one.
    fn mode(&self) -> Option<u32> {
        None
    }
}

fn wavenumber(param: f64) -> Result<Wavenumber> {
    Wavenumber::new(param)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RectangularGreens;

impl FreeGreens for RectangularGreens {
    fn geometry(&self) -> Geometry {
        Geometry::Rectangular
    }

    fn eval(&self, x: f64, xp: f64, param: f64) -> Result<f64> {
        Ok(g0_rect(x, xp, wavenumber(param)?))
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CylindricalGreens {
    pub mode: u32,
}

impl FreeGreens for CylindricalGreens {
    fn geometry(&self) -> Geometry {
        Geometry::Cylindrical
    }

    fn eval(&self, x: f64, xp: f64, param: f64) -> Result<f64> {
        g0_cyl(x, xp, wavenumber(param)?, self.mode)
    }

    fn mode(&self) -> Option<u32> {
        Some(self.mode)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SphericalGreens {
    pub mode: u32,
}

impl FreeGreens for SphericalGreens {
    fn geometry(&self) -> Geometry {
        Geometry::Spherical
    }

    fn eval(&self, x: f64, xp: f64, param: f64) -> Result<f64> {
        g0_sph(x, xp, wavenumber(param)?, self.mode)
    }

    fn mode(&self) -> Option<u32> {
        Some(self.mode)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OscillatorGreens {
    pub units: UnitSystem,
    pub center: f64,
}

impl OscillatorGreens {
    pub fn new(units: UnitSystem, center: f64) -> Self {
        OscillatorGreens { units, center }
    }

    /// Oscillator centred in the box `[0, box_length]`.
    pub fn centered_in_box(units: UnitSystem, box_length: f64) -> Self {
        Self::new(units, 0.5 * box_length)
    }
}

impl FreeGreens for OscillatorGreens {
    fn geometry(&self) -> Geometry {
        Geometry::Oscillator
    }

    fn eval(&self, x: f64, xp: f64, param: f64) -> Result<f64> {
        g0_osc(x, xp, param, &self.units, self.center)
    }
}

type GreensFn = dyn Fn(f64, f64, f64) -> Result<f64> + Send + Sync;
type WeightFn = dyn Fn(f64) -> Result<f64> + Send + Sync;

/// User-supplied `g0` for an arbitrary Hermitian operator. The function
/// must be symmetric and finite on the diagonal.
pub struct CustomGreens {
    eval: Box<GreensFn>,
    weight: Box<WeightFn>,
    domain: Interval,
}

impl CustomGreens {
    /// Unit measure on the whole real line.
    pub fn new(eval: impl Fn(f64, f64, f64) -> Result<f64> + Send + Sync + 'static) -> Self {
        CustomGreens {
            eval: Box::new(eval),
            weight: Box::new(|_| Ok(1.0)),
            domain: Interval::new(f64::NEG_INFINITY, f64::INFINITY, true),
        }
    }

    pub fn with_weight(
        mut self,
        weight: impl Fn(f64) -> Result<f64> + Send + Sync + 'static,
    ) -> Self {
        self.weight = Box::new(weight);
        self
    }

    pub fn with_domain(mut self, domain: Interval) -> Self {
        self.domain = domain;
        self
    }
}

impl FreeGreens for CustomGreens {
    fn geometry(&self) -> Geometry {
        Geometry::Custom
    }

    fn eval(&self, x: f64, xp: f64, param: f64) -> Result<f64> {
        if !self.domain.contains(x) || !self.domain.contains(xp) {
            return Err(Error::Domain(format!("({x}, {xp}) outside custom domain")));
        }
        (self.eval)(x, xp, param)
    }

    fn weight(&self, position: f64) -> Result<f64> {
        if !self.domain.contains(position) {
            return Err(Error::Domain(format!("position {position} outside custom domain")));
        }
        (self.weight)(position)
    }

    fn domain(&self) -> Interval {
        self.domain
    }
}

impl std::fmt::Debug for CustomGreens {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CustomGreens").field("domain", &self.domain).finish_non_exhaustive()
    }
}
