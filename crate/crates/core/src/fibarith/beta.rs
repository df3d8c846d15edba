use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ALPHA;
use crate::numeric::Fixed;
use crate::{Error, Result};

/// Positions `j >= 1` of the ones in `x = sum a_j alpha^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BetaExpansion {
    pub exponents: Vec<u32>,
    pub depth: u32,
}

impl BetaExpansion {
    /// Builds an expansion from explicit exponents. Adjacent exponents are
    /// allowed here (non-canonical input); `beta_expand` never emits them.
    pub fn from_exponents(exponents: Vec<u32>) -> BetaExpansion {
        let depth = exponents.iter().copied().max().unwrap_or(0);
        BetaExpansion { exponents, depth }
    }

    pub fn is_canonical(&self) -> bool {
        self.exponents.iter().all(|&e| e >= 1)
            && self.exponents.windows(2).all(|w| w[1] >= w[0] + 2)
    }
}

impl Serialize for BetaExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.exponents.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BetaExpansion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<u32>::deserialize(d).map(BetaExpansion::from_exponents)
    }
}

/// Greedy expansion of `x` in `[0, 1)` up to `alpha^depth`.
///
/// The double is converted exactly and all further arithmetic runs in
/// fixed point, so depths beyond the double range (about 70) stay exact
/// relative to the input.
pub fn beta_expand(x: f64, depth: u32) -> Result<BetaExpansion> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("beta expansion needs 0 <= x < 1, got {x}")));
    }
    beta_expand_fixed(&f64_to_fixed(x, working_bits(depth)), depth)
}

/// Greedy expansion of `x + alpha^{depth+1}` truncated at `depth`: when
/// that shifted point is still below 1 the value lies within
/// `alpha^{depth+1}` of `x` on either side. This is the
/// finite expansion one reads off for ratios such as `n / F_L`, which sit
/// just below their Zeckendorf-induced sum.
pub fn beta_expand_nearest(x: f64, depth: u32) -> Result<BetaExpansion> {
    if !(0.0..1.0).contains(&x) {
        return Err(Error::Domain(format!("beta expansion needs 0 <= x < 1, got {x}")));
    }
    let bits = working_bits(depth);
    let mut shifted = f64_to_fixed(x, bits);
    let mut p = Fixed::from_int(1, bits);
    let alpha = Fixed::alpha(bits);
    for _ in 0..=depth {
        p = p.mul(&alpha);
    }
    shifted = &shifted + &p;
    let one = Fixed::from_int(1, bits);
    if shifted >= one {
        shifted = &one - &Fixed::from_mantissa(BigInt::from(1), bits);
    }
    beta_expand_fixed(&shifted, depth)
}

fn working_bits(depth: u32) -> u64 {
    // doubles reach down to 2^-1074
    1100u64.max(depth as u64 + 64)
}

/// Exact fixed point image of a finite double.
pub fn f64_to_fixed(x: f64, bits: u64) -> Fixed {
    assert!(x.is_finite());
    if x == 0.0 {
        return Fixed::zero(bits);
    }
    let raw = x.to_bits();
    let exp = ((raw >> 52) & 0x7ff) as i64;
    let frac = raw & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1 << 52), exp - 1075) };
    let mut m = BigInt::from(mant);
    let shift = e + bits as i64;
    m = if shift >= 0 { m << shift as u64 } else { m >> (-shift) as u64 };
    if x < 0.0 {
        m = -m;
    }
    Fixed::from_mantissa(m, bits)
}

/// Greedy expansion of an extended precision `x` in `[0, 1)`.
pub fn beta_expand_fixed(x: &Fixed, depth: u32) -> Result<BetaExpansion> {
    let bits = x.bits();
    if x < &Fixed::zero(bits) || x >= &Fixed::from_int(1, bits) {
        return Err(Error::Domain("beta expansion needs 0 <= x < 1".into()));
    }
    let alpha = Fixed::alpha(bits);
    let mut power = Fixed::from_int(1, bits);
    let mut rest = x.clone();
    let mut exponents = Vec::new();
    let mut prev_taken = false;
    for j in 1..=depth {
        power = power.mul(&alpha);
        if !prev_taken && power <= rest {
            rest = &rest - &power;
            exponents.push(j);
            prev_taken = true;
        } else {
            prev_taken = false;
        }
    }
    Ok(BetaExpansion { exponents, depth })
}

/// `sum alpha^e` over the exponents.
pub fn beta_value(rep: &BetaExpansion) -> f64 {
    rep.exponents.iter().rev().map(|&e| ALPHA.powi(e as i32)).sum()
}
