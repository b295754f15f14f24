use std::f64::consts::FRAC_PI_2;

use super::{ln_bessel_i_nu, ln_bessel_k_nu};
use crate::error::{Error, Result};

fn check_arg(x: f64, what: &str) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("{what}: argument must be finite and > 0, got {x}")));
    }
    Ok(())
}

/// Modified spherical Bessel functions `(i_l(x), k_l(x))` with
/// `i_l = sqrt(pi/2x) I_{l+1/2}` and `k_l = sqrt(pi/2x) K_{l+1/2}`.
///
/// In this convention `i_0 = sinh x / x` and `k_0 = (pi/2) e^{-x} / x`, and
/// the Wronskian is `i_l k_l' - i_l' k_l = -pi / (2 x^2)`.
pub fn sph_modified(l: u32, x: f64) -> Result<(f64, f64)> {
    check_arg(x, "sph_modified")?;
    let nu = f64::from(l) + 0.5;
    let ln_pref = 0.5 * (FRAC_PI_2 / x).ln();
    let i = (ln_pref + ln_bessel_i_nu(nu, x)).exp();
    let k = (ln_pref + ln_bessel_k_nu(nu, x)).exp();
    if !i.is_finite() || !k.is_finite() {
        return Err(Error::Range(format!("sph_modified({l}, {x}) overflows")));
    }
    Ok((i, k))
}

fn j1_closed(x: f64) -> f64 {
    if x < 0.5 {
        // x/3 - x^3/30 + x^5/840 - x^7/45360 + x^9/3991680 - ...
        let x2 = x * x;
        x / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0 * (1.0 - x2 / 54.0 * (1.0 - x2 / 88.0 * (1.0 - x2 / 130.0)))))
    } else {
        x.sin() / (x * x) - x.cos() / x
    }
}

fn j0_closed(x: f64) -> f64 {
    if x < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Spherical Bessel functions `(j_l(x), y_l(x))`.
///
/// `j_l` by backward recurrence normalised against the closed forms of
/// `j_0`/`j_1`; `y_l` by upward recurrence from its closed forms.
pub fn sph_ordinary(l: u32, x: f64) -> Result<(f64, f64)> {
    check_arg(x, "sph_ordinary")?;
    let l_us = l as usize;

    let y0 = -x.cos() / x;
    let y = if l == 0 {
        y0
    } else {
        let (mut prev, mut cur) = (y0, -x.cos() / (x * x) - x.sin() / x);
        for n in 1..l_us {
            let next = (2 * n + 1) as f64 / x * cur - prev;
            prev = cur;
            cur = next;
        }
        cur
    };
    if !y.is_finite() {
        return Err(Error::Range(format!("sph_ordinary: y_{l}({x}) overflows")));
    }

    let j0 = j0_closed(x);
    let j = match l {
        0 => j0,
        1 => j1_closed(x),
        _ => {
            let reach = (l as f64).max(x);
            let start = (reach + 30.0 + (40.0 * reach).sqrt()) as usize + 2;
            let mut vals = vec![0.0f64; start + 2];
            vals[start] = 1e-30;
            for k in (1..=start).rev() {
                let next = (2 * k + 1) as f64 / x * vals[k] - vals[k + 1];
                vals[k - 1] = next;
                if next.abs() > 1e280 {
                    for v in vals[k - 1..].iter_mut() {
                        *v /= 1e280;
                    }
                }
            }
            let j1 = j1_closed(x);
            let scale = if j0.abs() >= j1.abs() { j0 / vals[0] } else { j1 / vals[1] };
            vals[l_us] * scale
        }
    };
    Ok((j, y))
}
