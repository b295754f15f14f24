use std::f64::consts::PI;

use super::SignLog;
use crate::error::{Error, Result};

// Lanczos approximation, g = 7, nine coefficients.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(pi * x)` with the argument reduced exactly, so that zeros at the
/// integers are exact and nearby values keep full relative precision.
pub fn sin_pi(x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    // r in [0, 2), exact
    let mut r = x - 2.0 * (x / 2.0).floor();
    let mut sign = 1.0;
    if r >= 1.0 {
        r -= 1.0;
        sign = -1.0;
    }
    if r == 0.0 {
        return 0.0;
    }
    if r > 0.5 {
        r = 1.0 - r;
    }
    sign * (PI * r).sin()
}

fn lanczos_sum(z: f64) -> f64 {
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    a
}

/// Euler's gamma function.
///
/// Lanczos approximation for `x >= 0.5`, reflection below. Non-positive
/// integers are poles and return a domain error; results beyond the double
/// range return a range error.
pub fn gamma(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::domain("gamma(NaN)"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("gamma pole at {x}")));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let g = gamma(1.0 - x)?;
        let v = PI / (s * g);
        if !v.is_finite() {
            return Err(Error::Range(format!("gamma({x}) overflows")));
        }
        return Ok(v);
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // t^(z+1/2) split in two halves so intermediate powers stay finite
    let half = t.powf(0.5 * (z + 0.5));
    let v = (2.0 * PI).sqrt() * half * (-t).exp() * half * lanczos_sum(z);
    if !v.is_finite() {
        return Err(Error::Range(format!("gamma({x}) overflows")));
    }
    Ok(v)
}

/// `(ln|Γ(x)|, sign Γ(x))`. Domain error at the poles.
pub fn ln_gamma(x: f64) -> Result<(f64, i8)> {
    if x.is_nan() {
        return Err(Error::domain("ln_gamma(NaN)"));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Domain(format!("gamma pole at {x}")));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        let (lg, _) = ln_gamma(1.0 - x)?;
        let sign = if s > 0.0 { 1 } else { -1 };
        return Ok((PI.ln() - s.abs().ln() - lg, sign));
    }
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    Ok((LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln(), 1))
}

/// `1/Γ(x)` as a [`SignLog`]; exactly zero at the poles of Γ.
pub fn rgamma_signlog(x: f64) -> SignLog {
    if is_nonpositive_integer(x) {
        return SignLog::ZERO;
    }
    match ln_gamma(x) {
        Ok((lg, s)) => SignLog::new(s, -lg),
        Err(_) => SignLog::new(0, 0.0),
    }
}
