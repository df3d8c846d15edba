use std::ops::{Add, Sub};

const ONE: u128 = 1 << 127;
const HALF: u128 = 1 << 126;
const SCALE: f64 = 1.7014118346046923e38; // 2^127

/// A point of the circle R/2Z in fixed point, one unit being 2^127.
///
/// Arithmetic wraps modulo 2, which keeps the sign information needed by
/// kernels of period two (sec) while period-one kernels simply look at
/// the low 127 bits. Orbits are generated by integer multiplication, so
/// the phase of the k-th point carries no accumulated rounding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Phase(pub u128);

impl Phase {
    pub const ZERO: Phase = Phase(0);
    pub const HALF: Phase = Phase(HALF);
    pub const ONE: Phase = Phase(ONE);
    /// round(alpha * 2^127) with alpha = (sqrt 5 - 1) / 2.
    pub const GOLDEN: Phase = Phase(0x4f1b_bcdc_bfa5_3e0a_f9ce_6030_2e76_e41a);

    /// Reduces `x` modulo 2. The conversion of a double is exact.
    pub fn from_f64(x: f64) -> Phase {
        if x < 0.0 {
            // reducing a negative double would round it against 2
            return Phase(Phase::from_f64(-x).0.wrapping_neg());
        }
        let r = x.rem_euclid(2.0);
        if r >= 2.0 {
            return Phase::ZERO;
        }
        Phase((r * SCALE) as u128)
    }

    /// floor(2^127 * r / den) for r = num mod 2 den.
    pub fn from_ratio(num: u128, den: u64) -> Phase {
        let den = den as u128;
        let r = num % (2 * den);
        let hi = (r << 63) / den;
        let rem = (r << 63) % den;
        let lo = (rem << 64) / den;
        Phase((hi << 64) | lo)
    }

    /// The phase reached after `k` steps of size `self`.
    #[inline]
    pub fn times(self, k: u128) -> Phase {
        Phase(self.0.wrapping_mul(k))
    }

    /// Signed distance to the nearest integer, in [-1/2, 1/2).
    #[inline]
    pub fn signed_frac(self) -> f64 {
        let m = self.0 & (ONE - 1);
        let s = if m >= HALF { -((ONE - m) as i128) } else { m as i128 };
        s as f64 / SCALE
    }

    /// Fractional part in [0, 1).
    #[inline]
    pub fn frac(self) -> f64 {
        (self.0 & (ONE - 1)) as f64 / SCALE
    }

    /// Parity of the nearest integer, ties going up.
    #[inline]
    pub fn nearest_parity(self) -> u32 {
        (self.0.wrapping_add(HALF) >> 127) as u32
    }

    /// Value in [0, 2).
    pub fn to_f64(self) -> f64 {
        self.0 as f64 / SCALE
    }

    /// True when the point sits exactly on an integer.
    pub fn is_integer(self) -> bool {
        self.0 & (ONE - 1) == 0
    }
}

impl Add for Phase {
    type Output = Phase;
    #[inline]
    fn add(self, rhs: Phase) -> Phase {
        Phase(self.0.wrapping_add(rhs.0))
    }
}

impl Sub for Phase {
    type Output = Phase;
    #[inline]
    fn sub(self, rhs: Phase) -> Phase {
        Phase(self.0.wrapping_sub(rhs.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn golden_constant_matches_integer_sqrt() {
        let s = (BigUint::from(5u32) << 260u32).sqrt();
        let a: BigUint = (s - (BigUint::from(1u32) << 130u32)) >> 1u32;
        let rounded: BigUint = (a + BigUint::from(4u32)) >> 3u32;
        assert_eq!(rounded, BigUint::from(Phase::GOLDEN.0));
        assert!((Phase::GOLDEN.to_f64() - 0.6180339887498949).abs() < 1e-16);
    }

    #[test]
    fn signed_frac_ties_go_negative() {
        assert_eq!(Phase::from_f64(2.5).signed_frac(), -0.5);
        assert!((Phase::from_f64(0.7).signed_frac() + 0.3).abs() < 1e-15);
        assert!((Phase::from_f64(-0.2).signed_frac() + 0.2).abs() < 1e-15);
    }

    #[test]
    fn parity_of_nearest_integer() {
        assert_eq!(Phase::from_f64(0.2).nearest_parity(), 0);
        assert_eq!(Phase::from_f64(0.7).nearest_parity(), 1);
        assert_eq!(Phase::from_f64(1.4).nearest_parity(), 1);
        assert_eq!(Phase::from_f64(1.6).nearest_parity(), 0);
        assert_eq!(Phase::from_f64(-0.7).nearest_parity(), 1);
    }

    #[test]
    fn ratio_is_exact_for_small_denominators() {
        assert_eq!(Phase::from_ratio(1, 2), Phase::HALF);
        assert_eq!(Phase::from_ratio(3, 3), Phase::ONE);
        assert_eq!(Phase::from_ratio(6, 3), Phase::ZERO);
        assert!((Phase::from_ratio(1, 3).to_f64() - 1.0 / 3.0).abs() < 1e-16);
    }

    #[test]
    fn orbit_matches_fibonacci_identity() {
        // q_m alpha is within alpha^m of p_m.
        let d = Phase::GOLDEN.times(46368).signed_frac();
        let expect = -(0.6180339887498949f64).powi(24);
        assert!((d - expect).abs() < 1e-19, "{d} {expect}");
    }
}
