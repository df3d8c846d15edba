use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};

/// A real number `mant / 2^bits` with an arbitrary precision mantissa.
///
/// Products and quotients truncate towards negative infinity, which keeps
/// every operation deterministic across platforms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixed {
    mant: BigInt,
    bits: u64,
}

impl Fixed {
    pub fn zero(bits: u64) -> Fixed {
        Fixed { mant: BigInt::zero(), bits }
    }

    pub fn from_int(n: impl Into<BigInt>, bits: u64) -> Fixed {
        Fixed { mant: n.into() << bits, bits }
    }

    /// floor(num / den) at the given precision.
    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u64) -> Fixed {
        let scaled: BigInt = num.clone() << bits;
        Fixed { mant: scaled.div_floor(den), bits }
    }

    /// floor(sqrt(n)) at the given precision.
    pub fn sqrt_of(n: &BigUint, bits: u64) -> Fixed {
        let r = (n << (2 * bits)).sqrt();
        Fixed { mant: BigInt::from(r), bits }
    }

    /// The golden ratio conjugate (sqrt 5 - 1) / 2.
    pub fn alpha(bits: u64) -> Fixed {
        let s5 = Self::sqrt_of(&BigUint::from(5u32), bits + 1);
        let one = BigInt::one() << (bits + 1);
        Fixed { mant: (s5.mant - one) >> 2u32, bits }
    }

    pub fn from_mantissa(mant: BigInt, bits: u64) -> Fixed {
        Fixed { mant, bits }
    }

    /// Drops precision down to `bits`, rounding towards negative infinity.
    pub fn shrink(&self, bits: u64) -> Fixed {
        assert!(bits <= self.bits, "shrink cannot add precision");
        Fixed { mant: &self.mant >> (self.bits - bits), bits }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn abs(&self) -> Fixed {
        Fixed { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn mul(&self, rhs: &Fixed) -> Fixed {
        assert_eq!(self.bits, rhs.bits, "mixed precision");
        Fixed { mant: (&self.mant * &rhs.mant) >> self.bits, bits: self.bits }
    }

    pub fn mul_int(&self, k: &BigInt) -> Fixed {
        Fixed { mant: &self.mant * k, bits: self.bits }
    }

    pub fn div_int(&self, k: &BigInt) -> Fixed {
        Fixed { mant: self.mant.div_floor(k), bits: self.bits }
    }

    /// Nearest double.
    pub fn to_f64(&self) -> f64 {
        let len = self.mant.bits() as i64;
        let shift = len - 64;
        let (m, e) = if shift > 0 {
            ((&self.mant >> shift as u64).to_f64().unwrap_or(0.0), shift - self.bits as i64)
        } else {
            (self.mant.to_f64().unwrap_or(0.0), -(self.bits as i64))
        };
        m * pow2(e)
    }

    /// Decimal expansion with `digits` digits after the point, truncated.
    pub fn to_decimal(&self, digits: usize) -> String {
        let (sign, mag) = (self.mant.sign(), self.mant.abs());
        let scaled: BigInt = (mag * BigInt::from(10u32).pow(digits as u32)) >> self.bits;
        let mut s = scaled.to_string();
        if s.len() <= digits {
            s = "0".repeat(digits + 1 - s.len()) + &s;
        }
        let (int, frac) = s.split_at(s.len() - digits);
        let neg = if sign == Sign::Minus { "-" } else { "" };
        if digits == 0 {
            format!("{neg}{int}")
        } else {
            format!("{neg}{int}.{frac}")
        }
    }

    /// Number of bits `self` and `other` agree to, i.e. -log2 |self - other|.
    pub fn agreement_bits(&self, other: &Fixed) -> u64 {
        let d = (&self.mant - &other.mant).abs();
        if d.is_zero() {
            return self.bits;
        }
        self.bits.saturating_sub(d.bits())
    }
}

fn pow2(e: i64) -> f64 {
    if e < -1074 {
        return 0.0;
    }
    if e < -1000 {
        return 2f64.powi(-1000) * 2f64.powi((e + 1000) as i32);
    }
    2f64.powi(e.clamp(-1074, 1100) as i32)
}

impl Add for &Fixed {
    type Output = Fixed;
    fn add(self, rhs: &Fixed) -> Fixed {
        assert_eq!(self.bits, rhs.bits, "mixed precision");
        Fixed { mant: &self.mant + &rhs.mant, bits: self.bits }
    }
}

impl Sub for &Fixed {
    type Output = Fixed;
    fn sub(self, rhs: &Fixed) -> Fixed {
        assert_eq!(self.bits, rhs.bits, "mixed precision");
        Fixed { mant: &self.mant - &rhs.mant, bits: self.bits }
    }
}

impl Neg for Fixed {
    type Output = Fixed;
    fn neg(self) -> Fixed {
        Fixed { mant: -self.mant, bits: self.bits }
    }
}

impl PartialOrd for Fixed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        (self.bits == other.bits).then(|| self.mant.cmp(&other.mant))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_digits() {
        let a = Fixed::alpha(256);
        assert_eq!(a.to_decimal(30), "0.618033988749894848204586834365");
        assert!((a.to_f64() - 0.6180339887498949).abs() < 1e-16);
    }

    #[test]
    fn negative_decimal() {
        let x = Fixed::from_ratio(&BigInt::from(-1), &BigInt::from(8), 64);
        assert_eq!(x.to_decimal(3), "-0.125");
        assert_eq!(x.to_f64(), -0.125);
    }

    #[test]
    fn tiny_values_convert() {
        let x = Fixed::from_ratio(&BigInt::from(1), &(BigInt::from(1) << 300u32), 512);
        assert_eq!(x.to_f64(), 2f64.powi(-300));
    }

    #[test]
    fn agreement() {
        let a = Fixed::alpha(200);
        let b = Fixed::alpha(200);
        assert_eq!(a.agreement_bits(&b), 200);
    }
}
