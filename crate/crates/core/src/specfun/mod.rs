//! Double-precision special functions used by the free-space Green's
//! functions: gamma, integer- and half-integer-order Bessel functions,
//! Kummer's confluent hypergeometric function and parabolic cylinder
//! functions.
//!
//! Everything here is a pure function of its arguments. Series are summed
//! with Neumaier-compensated accumulation.

mod bessel;
mod gamma;
mod hermite;
mod kummer;
mod pcf;
mod signlog;
mod spherical;

pub use bessel::{bessel_i, bessel_jy, bessel_k};
pub(crate) use bessel::{ln_bessel_i_nu, ln_bessel_k_nu};
pub use gamma::{gamma, ln_gamma, rgamma_signlog, sin_pi};
pub use hermite::hermite;
pub use kummer::kummer_m;
pub use pcf::{pcf_d, pcf_d_signlog, pcf_kummer_parts, PcfParts, PCF_V_RANGE, PCF_Y_MAX};
pub use signlog::SignLog;
pub use spherical::{sph_modified, sph_ordinary};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-13).abs() < 1e-25);
    }
}
