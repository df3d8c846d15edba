use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::ops::{Add, Mul};

use crate::numeric::Fixed;

/// The exact real `a + b * alpha`, using `alpha^2 = 1 - alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaInteger {
    pub a: BigInt,
    pub b: BigInt,
}

impl AlphaInteger {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        AlphaInteger { a: a.into(), b: b.into() }
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn alpha() -> Self {
        Self::new(0, 1)
    }

    /// Value at enough precision to survive the cancellation in `a + b alpha`.
    pub fn to_fixed(&self, bits: u64) -> Fixed {
        let guard = 2 * self.a.bits().max(self.b.bits()) + 64;
        let w = bits + guard;
        let v = &Fixed::from_int(self.a.clone(), w) + &Fixed::alpha(w).mul_int(&self.b);
        v.shrink(bits)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_fixed(self.b.bits() + 96).to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl Add for &AlphaInteger {
    type Output = AlphaInteger;
    fn add(self, r: &AlphaInteger) -> AlphaInteger {
        AlphaInteger { a: &self.a + &r.a, b: &self.b + &r.b }
    }
}

impl Mul for &AlphaInteger {
    type Output = AlphaInteger;
    fn mul(self, r: &AlphaInteger) -> AlphaInteger {
        // (a + b x)(c + d x) with x^2 = 1 - x
        let bd = &self.b * &r.b;
        AlphaInteger {
            a: &self.a * &r.a + &bd,
            b: &self.a * &r.b + &self.b * &r.a - bd,
        }
    }
}

/// `alpha^j = (-1)^j F_{j-1} + (-1)^{j+1} F_j alpha`.
pub fn alpha_power(j: u32) -> AlphaInteger {
    let (mut a, mut b) = (BigInt::one(), BigInt::zero());
    for _ in 0..j {
        // (a + b x) x = b + (a - b) x
        let nb = &a - &b;
        a = std::mem::replace(&mut b, nb);
    }
    AlphaInteger { a, b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibarith::{fibonacci, ALPHA};
    use proptest::prelude::*;

    #[test]
    fn small_powers() {
        assert_eq!(alpha_power(0), AlphaInteger::new(1, 0));
        assert_eq!(alpha_power(1), AlphaInteger::new(0, 1));
        assert_eq!(alpha_power(2), AlphaInteger::new(1, -1));
        let p7 = alpha_power(7);
        assert_eq!(p7, AlphaInteger::new(-8, 13));
        assert!((p7.to_f64() - ALPHA.powi(7)).abs() < 1e-16);
        assert!((p7.to_f64() - 0.034442).abs() < 1e-6);
    }

    #[test]
    fn closed_form_coefficients() {
        for j in 1..80u32 {
            let p = alpha_power(j);
            let sign = if j % 2 == 0 { 1 } else { -1 };
            assert_eq!(p.a, BigInt::from(sign) * BigInt::from(fibonacci(j - 1).0));
            assert_eq!(p.b, BigInt::from(-sign) * BigInt::from(fibonacci(j).0));
        }
    }

    #[test]
    fn deep_powers_evaluate() {
        let v = alpha_power(150).to_f64();
        assert!((v / ALPHA.powi(150) - 1.0).abs() < 1e-13);
    }

    proptest! {
        #[test]
        fn multiplication_is_exact(j in 0u32..=60, k in 0u32..=60) {
            prop_assume!(j + k <= 60);
            prop_assert_eq!(&alpha_power(j) * &alpha_power(k), alpha_power(j + k));
        }

        #[test]
        fn shift_recurrence(k in 1u32..60) {
            // alpha^k + alpha^{k+1} = alpha^{k-1}
            prop_assert_eq!(&alpha_power(k) + &alpha_power(k + 1), alpha_power(k - 1));
        }
    }
}
