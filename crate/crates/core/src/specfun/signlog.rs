use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};

/// A real number stored as `sign * exp(log_mag)`.
///
/// Used where intermediate magnitudes leave the double range, e.g. squared
/// parabolic cylinder functions at orders near 200 and determinants of
/// boundary matrices. `sign == 0` is an exact zero and `log_mag` is then
/// meaningless (kept at `-inf`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignLog {
    sign: i8,
    log_mag: f64,
}

impl SignLog {
    pub const ZERO: SignLog = SignLog { sign: 0, log_mag: f64::NEG_INFINITY };
    pub const ONE: SignLog = SignLog { sign: 1, log_mag: 0.0 };

    /// Builds from parts. A zero sign discards `log_mag`.
    pub fn new(sign: i8, log_mag: f64) -> Self {
        match sign.signum() {
            0 => Self::ZERO,
            s => SignLog { sign: s, log_mag },
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            SignLog { sign: if x > 0.0 { 1 } else { -1 }, log_mag: x.abs().ln() }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_mag(&self) -> f64 {
        self.log_mag
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Converts back to a double, failing if the magnitude overflows.
    pub fn to_f64(&self) -> Result<f64> {
        if self.sign == 0 {
            return Ok(0.0);
        }
        let v = self.log_mag.exp();
        if v.is_infinite() {
            return Err(Error::Range(format!(
                "magnitude exp({}) exceeds double range",
                self.log_mag
            )));
        }
        Ok(f64::from(self.sign) * v)
    }

    /// Lossy conversion: overflow saturates to ±inf.
    pub fn to_f64_lossy(&self) -> f64 {
        if self.sign == 0 {
            0.0
        } else {
            f64::from(self.sign) * self.log_mag.exp()
        }
    }

    pub fn abs(&self) -> Self {
        SignLog { sign: self.sign.abs(), log_mag: self.log_mag }
    }

    /// Multiplies by a positive constant given by its logarithm.
    pub fn scale_ln(&self, ln_factor: f64) -> Self {
        if self.sign == 0 {
            *self
        } else {
            SignLog { sign: self.sign, log_mag: self.log_mag + ln_factor }
        }
    }

    pub fn powi(&self, n: i32) -> Self {
        if n == 0 {
            return Self::ONE;
        }
        if self.sign == 0 {
            return Self::ZERO;
        }
        let sign = if n % 2 == 0 { 1 } else { self.sign };
        SignLog { sign, log_mag: self.log_mag * f64::from(n) }
    }

    /// Sum of two values, evaluated relative to the larger magnitude.
    pub fn add(&self, other: &SignLog) -> SignLog {
        if self.sign == 0 {
            return *other;
        }
        if other.sign == 0 {
            return *self;
        }
        let (big, small) = if self.log_mag >= other.log_mag { (self, other) } else { (other, self) };
        let ratio = (small.log_mag - big.log_mag).exp();
        let t = f64::from(big.sign) + f64::from(small.sign) * ratio;
        if t == 0.0 {
            return Self::ZERO;
        }
        SignLog { sign: if t > 0.0 { 1 } else { -1 }, log_mag: big.log_mag + t.abs().ln() }
    }

    pub fn sub(&self, other: &SignLog) -> SignLog {
        self.add(&-*other)
    }
}

impl Mul for SignLog {
    type Output = SignLog;

    fn mul(self, rhs: SignLog) -> SignLog {
        if self.sign == 0 || rhs.sign == 0 {
            return SignLog::ZERO;
        }
        SignLog { sign: self.sign * rhs.sign, log_mag: self.log_mag + rhs.log_mag }
    }
}

impl Neg for SignLog {
    type Output = SignLog;

    fn neg(self) -> SignLog {
        SignLog { sign: -self.sign, log_mag: self.log_mag }
    }
}

impl fmt::Display for SignLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            s => write!(f, "{}exp({})", if s > 0 { "+" } else { "-" }, self.log_mag),
        }
    }
}
