use crate::fibarith::{beta_expand_fixed, f64_to_fixed, BetaExpansion};
use crate::numeric::Fixed;
use crate::Result;

const WORKING_BITS: u64 = 1100;

fn signed_value(rep: &BetaExpansion) -> f64 {
    rep.exponents
        .iter()
        .map(|&k| {
            let t = crate::fibarith::ALPHA.powi(k as i32);
            if k % 2 == 1 {
                t
            } else {
                -t
            }
        })
        .sum()
}

/// `o(x) = sum (-1)^{k-1} a_k alpha^k` over the greedy digits of `x` to `depth`.
pub fn caricature(x: f64, depth: u32) -> Result<f64> {
    caricature_fixed(&f64_to_fixed(x, WORKING_BITS.max(depth as u64 + 64)), depth)
}

pub fn caricature_fixed(x: &Fixed, depth: u32) -> Result<f64> {
    Ok(signed_value(&beta_expand_fixed(x, depth)?))
}

/// `|o(alpha x) + alpha o(x)|`, with `alpha x` formed in fixed point so the
/// digits shift exactly.
pub fn caricature_symmetry_residual(x: f64, depth: u32) -> Result<f64> {
    let bits = WORKING_BITS.max(depth as u64 + 64);
    let fx = f64_to_fixed(x, bits);
    let ax = fx.mul(&Fixed::alpha(bits));
    let o = caricature_fixed(&fx, depth)?;
    let oa = caricature_fixed(&ax, depth + 1)?;
    Ok((oa + crate::fibarith::ALPHA * o).abs())
}
