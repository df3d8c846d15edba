use num_bigint::BigInt;
use num_traits::One;

use crate::numeric::Fixed;
use crate::{Error, Result};

/// `(2k)! / (k! (k+1)!)`.
pub fn catalan_number(k: u32) -> BigInt {
    let mut c = BigInt::one();
    for i in 0..k {
        c = c * (4 * i + 2) / (i + 2);
    }
    c
}

/// Bits needed for `catalan_gold(n, terms)`: the last retained term has
/// size about `(4/5)^K q^{-(2K+2)}`, plus a guard.
pub fn catalan_gold_required_bits(q_bits: u64, terms: u32) -> u64 {
    (2 * terms as u64 + 4) * q_bits + (terms as u64 + 2) / 3 + 32
}

/// Partial sum over `k < terms` of `(-1)^{(n+1)(k+1)} c_k / (5^k q_n^{2k+2})`,
/// which approximates `sqrt 5 (alpha - p_n / q_n)`.
pub fn catalan_gold(n: u32, terms: u32, bits: u64) -> Result<Fixed> {
    if n == 0 || terms == 0 {
        return Err(Error::Domain("catalan series needs n >= 1 and at least one term".into()));
    }
    let q = BigInt::from(super::fibonacci(n).0);
    // ceil(log2 q)
    let q_log2 = (&q - 1u32).bits();
    let need = catalan_gold_required_bits(q_log2, terms);
    if bits < need {
        return Err(Error::Precision { required: need, available: bits });
    }
    let q2 = &q * &q;
    let mut c = BigInt::one();
    let mut den = q2.clone();
    let mut acc = Fixed::zero(bits);
    for k in 0..terms {
        let term = Fixed::from_ratio(&c, &den, bits);
        let odd = ((n as u64 + 1) * (k as u64 + 1)) % 2 == 1;
        acc = if odd { &acc - &term } else { &acc + &term };
        c = c * (4 * k + 2) / (k + 2);
        den = den * 5 * &q2;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibarith::fibonacci;
    use num_bigint::BigUint;

    fn target(n: u32, bits: u64) -> Fixed {
        let s5 = Fixed::sqrt_of(&BigUint::from(5u32), bits);
        let p = BigInt::from(fibonacci(n - 1).0);
        let q = BigInt::from(fibonacci(n).0);
        let d = &Fixed::alpha(bits) - &Fixed::from_ratio(&p, &q, bits);
        s5.mul(&d)
    }

    #[test]
    fn catalan_numbers() {
        let c: Vec<_> = (0..8).map(|k| catalan_number(k).to_string()).collect();
        assert_eq!(c, ["1", "1", "2", "5", "14", "42", "132", "429"]);
    }

    #[test]
    fn first_level_gives_root_five_alpha() {
        let v = catalan_gold(1, 320, 512).unwrap();
        assert_eq!(v.to_decimal(30), target(1, 512).to_decimal(30));
        assert!(v.to_decimal(6).starts_with("1.381966"));
    }

    #[test]
    fn second_level() {
        let v = catalan_gold(2, 320, 512).unwrap();
        assert!((v.to_f64() + 0.854102).abs() < 1e-6);
        assert!(v.agreement_bits(&target(2, 512)) > 90);
    }

    #[test]
    fn leading_term() {
        for n in 1..12 {
            let v = catalan_gold(n, 1, 1024).unwrap().to_f64();
            let q = fibonacci(n).to_f64();
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            assert!((v - sign / (q * q)).abs() < 1e-15);
        }
    }

    #[test]
    fn refuses_low_precision() {
        assert!(matches!(catalan_gold(10, 4, 64), Err(Error::Precision { .. })));
    }
}
