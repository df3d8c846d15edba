//! The golden graph `s(x, y) = lim S_{[q x]}(y / q) / q` along even levels,
//! its expansion in terms of sigma over the beta digits of `x`, the caricature
//! `o(x)`, the rational analogue `t`, and the estimator for huge `n`.
//!
//! Splitting `1..n` along the Zeckendorf digits of `n` gives one block
//! per digit. Block `b` has length `F_{m_b}` and starts at
//! `N_b = F_{m_1} + ... + F_{m_{b-1}}`, so its points are
//! `N_b alpha + k alpha` for `k = 0..F_{m_b}`. Since
//! `F_m alpha - F_{m-1} = -(-alpha)^m`, the block start is the small number
//! `-sum_{i<b} (-alpha)^{m_i}`; in the block's own unit it becomes the
//! sigma argument of that block, and its `k = 0` point contributes a pole
//! term `cot(pi o_b / F_{m_b}) / F_{m_b}` of its own.

mod caricature;
mod estimate;
mod offsets;
mod oracle;

pub use caricature::{caricature, caricature_fixed, caricature_symmetry_residual};
pub use estimate::{estimate_huge, estimate_huge_with, EstimateConfig, HugeEstimate};
pub use offsets::{
    calibrate_offsets, compute_offsets, s_series, OffsetCalibration, OffsetSequence,
    OffsetVariant, Power, Prefix, CALIBRATED_VARIANT, REFERENCE_OFFSETS,
};
pub use oracle::{
    affine_fit_residual, s_oracle, s_oracle_many, self_similarity_residual, t_function,
    t_function_many, SelfSimilarityReport, Side,
};

use crate::fibarith::{ALPHA, SQRT5};

/// `x` minus its nearest integer, ties going to `-1/2`.
pub fn signed_frac(x: f64) -> f64 {
    x - (x + 0.5).floor()
}

/// `F_a / F_b`, computed from Binet's formula without forming either.
pub(crate) fn fib_ratio(a: u32, b: u32) -> f64 {
    let num = 1.0 - parity_sign(a) * ALPHA.powi(2 * a as i32);
    let den = 1.0 - parity_sign(b) * ALPHA.powi(2 * b as i32);
    if a >= b {
        ALPHA.powi(-((a - b) as i32)) * num / den
    } else {
        ALPHA.powi((b - a) as i32) * num / den
    }
}

/// `F_m alpha^j`, without overflow for large `m`.
pub(crate) fn fib_times_alpha_power(m: u32, j: u32) -> f64 {
    // F_m alpha^m = (1 - (-1)^m alpha^{2m}) / sqrt 5
    let base = (1.0 - parity_sign(m) * ALPHA.powi(2 * m as i32)) / SQRT5;
    base * ALPHA.powi(j as i32 - m as i32)
}

pub(crate) fn parity_sign(m: u32) -> f64 {
    if m % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibarith::fibonacci_u64;

    #[test]
    fn signed_frac_examples() {
        assert_eq!(signed_frac(0.3), 0.3);
        assert!((signed_frac(0.7) + 0.3).abs() < 1e-15);
        assert_eq!(signed_frac(2.5), -0.5);
        assert_eq!(signed_frac(-0.5), -0.5);
    }

    #[test]
    fn binet_ratios() {
        for (a, b) in [(3u32, 10u32), (10, 3), (20, 24), (2, 2), (1, 5)] {
            let exact = fibonacci_u64(a).unwrap() as f64 / fibonacci_u64(b).unwrap() as f64;
            assert!((fib_ratio(a, b) - exact).abs() < 1e-14 * exact.max(1.0), "{a}/{b}");
        }
        let direct = 17711.0 * ALPHA.powi(24);
        assert!((fib_times_alpha_power(22, 24) - direct).abs() < 1e-15);
    }
}
