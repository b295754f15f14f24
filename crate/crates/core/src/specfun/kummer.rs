use super::CompensatedSum;
use crate::error::{Error, Result};

const MAX_TERMS: usize = 10_000;

/// Kummer's confluent hypergeometric function `M(a, b, x)`.
///
/// Direct term recurrence `t_{k+1} = t_k (a+k) x / ((b+k)(k+1))` with
/// compensated summation. Stops once `|t_k| <= 1e-16 |S|` holds for three
/// consecutive terms; a non-positive integer `a` truncates the series.
/// Negative `x` goes through Kummer's transformation
/// `M(a, b, x) = e^x M(b - a, b, -x)`, which avoids the alternating series.
pub fn kummer_m(a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite() && x.is_finite()) {
        return Err(Error::domain("kummer_m: non-finite argument"));
    }
    if b <= 0.0 && b == b.floor() {
        return Err(Error::Domain(format!("kummer_m: b = {b} is a pole")));
    }
    if x.abs() > 50.0 {
        return Err(Error::Domain(format!("kummer_m: |x| = {} exceeds 50", x.abs())));
    }
    if a.abs() > 300.0 {
        return Err(Error::Domain(format!("kummer_m: |a| = {} exceeds 300", a.abs())));
    }
    if x < 0.0 && !(a <= 0.0 && a == a.floor()) {
        return Ok(x.exp() * series(b - a, b, -x)?);
    }
    series(a, b, x)
}

fn series(a: f64, b: f64, x: f64) -> Result<f64> {
    let mut sum = CompensatedSum::new();
    let mut term = 1.0f64;
    sum.add(term);
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        sum.add(term);
        if term.abs() <= 1e-16 * sum.value().abs() {
            small += 1;
            if small == 3 {
                return Ok(sum.value());
            }
        } else {
            small = 0;
        }
    }
    Err(Error::Numeric {
        msg: format!("kummer_m({a}, {b}, {x}) did not converge in {MAX_TERMS} terms"),
        best: sum.value(),
    })
}
