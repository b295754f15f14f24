//! Integer-order Bessel functions.
//!
//! Modified functions of arbitrary real order are evaluated in log form so
//! that products like `I_m(x) K_m(y)` stay finite for large arguments:
//!
//! * `I_nu` by its positive-term power series with running rescaling;
//! * `K_nu` by the trapezoidal rule on `∫_0^∞ exp(-x cosh t) cosh(nu t) dt`,
//!   which converges geometrically in the step size for this analytic
//!   integrand.
//!
//! Ordinary `J_m` uses Miller's backward recurrence normalised by
//! `J_0 + 2 Σ J_2k = 1`; `Y_0`, `Y_1` come from Neumann series over the
//! same `J` values, and higher `Y_m` from upward recurrence.

use std::f64::consts::FRAC_2_PI;

use super::{ln_gamma, CompensatedSum, EULER_GAMMA};
use crate::error::{Error, Result};

/// Largest argument accepted by [`bessel_i`] before `I_m` overflows.
pub const BESSEL_I_MAX_ARG: f64 = 700.0;

const RESCALE: f64 = 1e280;

fn ln_gamma_pos(x: f64) -> f64 {
    ln_gamma(x).map(|(l, _)| l).unwrap_or(f64::NAN)
}

/// `ln I_nu(x)` for `nu >= 0`, `x > 0`.
pub(crate) fn ln_bessel_i_nu(nu: f64, x: f64) -> f64 {
    let half = 0.5 * x;
    let ln_t0 = nu * half.ln() - ln_gamma_pos(nu + 1.0);
    let q = half * half;
    let mut term = 1.0f64;
    let mut sum = CompensatedSum::new();
    sum.add(term);
    let mut ln_scale = 0.0;
    let mut k = 0.0f64;
    loop {
        term *= q / ((k + 1.0) * (k + 1.0 + nu));
        k += 1.0;
        sum.add(term);
        let s = sum.value();
        if s > RESCALE {
            term /= RESCALE;
            let rescaled = s / RESCALE;
            sum = CompensatedSum::new();
            sum.add(rescaled);
            ln_scale += RESCALE.ln();
        }
        if k > half && term <= 1e-17 * sum.value() {
            break;
        }
    }
    ln_t0 + ln_scale + sum.value().ln()
}

/// `ln K_nu(x)` for `nu >= 0`, `x > 0`.
pub(crate) fn ln_bessel_k_nu(nu: f64, x: f64) -> f64 {
    // Gaussian width of the integrand near t = 0 is ~ 1/sqrt(x)
    let h = (0.5 / x.sqrt()).min(0.1);
    // exponent of exp(-x (cosh t - 1)) cosh(nu t)
    let log_f = |t: f64| {
        let y = nu * t;
        -x * (t.cosh() - 1.0) + y + (0.5 * (1.0 + (-2.0 * y).exp())).ln()
    };
    let mut logs = Vec::with_capacity(256);
    let mut peak = f64::NEG_INFINITY;
    let mut j = 0usize;
    loop {
        let lf = log_f(j as f64 * h);
        logs.push(lf);
        let prev_peak = peak;
        peak = peak.max(lf);
        // past the maximum and negligible relative to it
        if j > 0 && lf < prev_peak && lf < peak - 45.0 {
            break;
        }
        j += 1;
    }
    let mut sum = CompensatedSum::new();
    for (i, lf) in logs.iter().enumerate() {
        let w = if i == 0 { 0.5 } else { 1.0 };
        sum.add(w * (lf - peak).exp());
    }
    -x + peak + (h * sum.value()).ln()
}

fn check_arg(x: f64, what: &str) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("{what}: argument must be finite and > 0, got {x}")));
    }
    Ok(())
}

/// Modified Bessel function of the first kind `I_m(x)`.
pub fn bessel_i(m: u32, x: f64) -> Result<f64> {
    check_arg(x, "bessel_i")?;
    if x > BESSEL_I_MAX_ARG {
        return Err(Error::Range(format!("bessel_i: x = {x} exceeds {BESSEL_I_MAX_ARG}")));
    }
    Ok(ln_bessel_i_nu(f64::from(m), x).exp())
}

/// Modified Bessel function of the second kind `K_m(x)`.
pub fn bessel_k(m: u32, x: f64) -> Result<f64> {
    check_arg(x, "bessel_k")?;
    let v = ln_bessel_k_nu(f64::from(m), x).exp();
    if v.is_infinite() {
        return Err(Error::Range(format!("bessel_k({m}, {x}) overflows")));
    }
    Ok(v)
}

/// `J_0 .. J_top` by Miller's algorithm. Returns at least `top + 1` values.
fn miller_j(top: usize, x: f64) -> Vec<f64> {
    let reach = (top as f64).max(x);
    let mut start = (reach + 30.0 + (40.0 * reach).sqrt()) as usize + 2;
    start += start % 2;
    let mut vals = vec![0.0f64; start + 2];
    vals[start] = 1e-30;
    for k in (1..=start).rev() {
        let next = 2.0 * k as f64 / x * vals[k] - vals[k + 1];
        vals[k - 1] = next;
        if next.abs() > RESCALE {
            for v in vals[k - 1..].iter_mut() {
                *v /= RESCALE;
            }
        }
    }
    let mut norm = CompensatedSum::new();
    norm.add(vals[0]);
    for k in (2..=start).step_by(2) {
        norm.add(2.0 * vals[k]);
    }
    let n = norm.value();
    vals.truncate(start + 1);
    for v in vals.iter_mut() {
        *v /= n;
    }
    vals
}

/// Bessel functions of the first and second kind, `(J_m(x), Y_m(x))`.
pub fn bessel_jy(m: u32, x: f64) -> Result<(f64, f64)> {
    check_arg(x, "bessel_jy")?;
    let m = m as usize;
    let j = miller_j(m.max(1), x);

    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = CompensatedSum::new();
    let mut s1 = CompensatedSum::new();
    let mut k = 1usize;
    while 2 * k + 1 < j.len() {
        let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        s0.add(sign * j[2 * k] / k as f64);
        s1.add(sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64);
        k += 1;
    }
    let y0 = FRAC_2_PI * log_term * j[0] - 2.0 * FRAC_2_PI * s0.value();
    let y1 = FRAC_2_PI * log_term * j[1] - FRAC_2_PI * j[0] / x + FRAC_2_PI * s1.value();

    let y = match m {
        0 => y0,
        1 => y1,
        _ => {
            let (mut prev, mut cur) = (y0, y1);
            for n in 1..m {
                let next = 2.0 * n as f64 / x * cur - prev;
                prev = cur;
                cur = next;
            }
            cur
        }
    };
    if !y.is_finite() {
        return Err(Error::Range(format!("bessel_jy: Y_{m}({x}) overflows")));
    }
    Ok((j[m], y))
}
