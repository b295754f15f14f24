use std::f64::consts::{LN_2, PI};

use super::{kummer_m, rgamma_signlog, SignLog};
use crate::error::{Error, Result};

pub const PCF_V_RANGE: (f64, f64) = (-1.0, 200.0);
pub const PCF_Y_MAX: f64 = 10.0;

/// Pieces of the even/odd decomposition
///
/// `D_v(y) = e^{-y^2/4} [ D_v(0) M(-v/2, 1/2, y^2/2) + D_v'(0) y M((1-v)/2, 3/2, y^2/2) ]`
///
/// with `D_v(0) = sqrt(pi) 2^{v/2} / Γ((1-v)/2)` and
/// `D_v'(0) = -sqrt(pi) 2^{(v+1)/2} / Γ(-v/2)`.
#[derive(Debug, Clone, Copy)]
pub struct PcfParts {
    /// `D_v(0)`
    pub value_at_origin: SignLog,
    /// `D_v'(0)`
    pub slope_at_origin: SignLog,
    /// `M(-v/2, 1/2, y^2/2)`
    pub even_series: f64,
    /// `M((1-v)/2, 3/2, y^2/2)`
    pub odd_series: f64,
}

fn check_range(v: f64, y: f64) -> Result<()> {
    if !(v >= PCF_V_RANGE.0 && v <= PCF_V_RANGE.1) {
        return Err(Error::Domain(format!("pcf: order v = {v} outside [-1, 200]")));
    }
    if !(y.abs() <= PCF_Y_MAX) {
        return Err(Error::Domain(format!("pcf: |y| = {} exceeds {PCF_Y_MAX}", y.abs())));
    }
    Ok(())
}

/// Computes the Kummer-decomposition pieces of `D_v` at `|y|`.
pub fn pcf_kummer_parts(v: f64, y: f64) -> Result<PcfParts> {
    check_range(v, y)?;
    let half_sqrt_pi_ln = 0.5 * PI.ln();
    let value_at_origin = rgamma_signlog(0.5 * (1.0 - v)).scale_ln(half_sqrt_pi_ln + 0.5 * v * LN_2);
    let slope_at_origin =
        -rgamma_signlog(-0.5 * v).scale_ln(half_sqrt_pi_ln + 0.5 * (v + 1.0) * LN_2);
    let z = 0.5 * y * y;
    Ok(PcfParts {
        value_at_origin,
        slope_at_origin,
        even_series: kummer_m(-0.5 * v, 0.5, z)?,
        odd_series: kummer_m(0.5 * (1.0 - v), 1.5, z)?,
    })
}

impl PcfParts {
    /// Assembles `D_v(y)` for the `y` (or `-y`) the parts were built at.
    pub fn assemble(&self, y: f64) -> SignLog {
        let even = self.value_at_origin * SignLog::from_f64(self.even_series);
        let odd = self.slope_at_origin * SignLog::from_f64(y * self.odd_series);
        even.add(&odd).scale_ln(-0.25 * y * y)
    }
}

/// Parabolic cylinder function `D_v(y)` as a [`SignLog`], valid for
/// `v ∈ [-1, 200]`, `|y| <= 10`.
pub fn pcf_d_signlog(v: f64, y: f64) -> Result<SignLog> {
    Ok(pcf_kummer_parts(v, y)?.assemble(y))
}

/// Parabolic cylinder function `D_v(y)`. Range error when the value
/// overflows; use [`pcf_d_signlog`] there.
pub fn pcf_d(v: f64, y: f64) -> Result<f64> {
    pcf_d_signlog(v, y)?.to_f64()
}
