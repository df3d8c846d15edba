//! Exact arithmetic around the golden ratio.
//!
//! Fibonacci numbers use `F_0 = 0, F_1 = F_2 = 1`, and the convergents of
//! `alpha = (sqrt 5 - 1) / 2` are `p_n / q_n = F_{n-1} / F_n`.

mod alpha_int;
mod beta;
mod catalan;
mod zeckendorf;

pub use alpha_int::{alpha_power, AlphaInteger};
pub use beta::{beta_expand, beta_expand_fixed, beta_expand_nearest, beta_value, f64_to_fixed, BetaExpansion};
pub use catalan::{catalan_gold, catalan_gold_required_bits, catalan_number};
pub use zeckendorf::{zeckendorf, ZeckendorfRep};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

use crate::Error;

/// The golden ratio conjugate `(sqrt 5 - 1) / 2`.
pub const ALPHA: f64 = 0.618_033_988_749_894_9;
/// The golden ratio `(sqrt 5 + 1) / 2`.
pub const PHI: f64 = 1.618_033_988_749_895;
pub const SQRT5: f64 = 2.236_067_977_499_79;

/// An arbitrary precision nonnegative integer.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Natural(pub BigUint);

impl Natural {
    pub fn new(v: impl Into<BigUint>) -> Natural {
        Natural(v.into())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    /// Nearest double, infinite beyond the f64 range.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }
}

impl fmt::Display for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Natural {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("not a natural number: {s:?}")));
        }
        BigUint::from_str(t)
            .map(Natural)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

impl From<u64> for Natural {
    fn from(v: u64) -> Self {
        Natural(BigUint::from(v))
    }
}

impl Serialize for Natural {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Natural {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `F_n`, exact.
pub fn fibonacci(n: u32) -> Natural {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    Natural(a)
}

/// `F_n` as a machine integer; `F_93` is the last one that fits.
pub fn fibonacci_u64(n: u32) -> Option<u64> {
    if n > 93 {
        return None;
    }
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        let c = a + b;
        a = std::mem::replace(&mut b, c);
    }
    u64::try_from(a).ok()
}

/// The n-th convergent `p_n / q_n` of alpha.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Convergent {
    pub n: u32,
    pub p: Natural,
    pub q: Natural,
}

impl Convergent {
    pub fn value(&self) -> f64 {
        let p = num_bigint::BigInt::from(self.p.0.clone());
        let q = num_bigint::BigInt::from(self.q.0.clone());
        crate::numeric::Fixed::from_ratio(&p, &q, 128).to_f64()
    }
}

/// The n-th convergent, `n >= 1`.
pub fn convergent(n: u32) -> crate::Result<Convergent> {
    if n == 0 {
        return Err(Error::Domain("convergent index must be at least 1".into()));
    }
    Ok(Convergent { n, p: fibonacci(n - 1), q: fibonacci(n) })
}

/// Index of the smallest Fibonacci number `>= n`, over indices `>= 2`.
pub fn level_at_least(n: &Natural) -> u32 {
    let mut k = 2;
    let (mut a, mut b) = (BigUint::one(), BigUint::from(2u32));
    while a < n.0 {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
        k += 1;
    }
    k
}
