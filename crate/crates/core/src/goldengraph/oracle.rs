use serde::{Deserialize, Serialize};

use crate::birkhoff::{prefix_sums, RotationSpec, MAX_GRAPH_LEVEL};
use crate::corefuncs::{KernelId, PolePolicy};
use crate::fibarith::{fibonacci_u64, ALPHA};
use crate::numeric::linear_fit;
use crate::{Error, Result};

/// Which one-sided value of a step function to take at a jump.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `S_{[q x]}`: right-continuous value.
    Right,
    /// `S_{ceil(q x) - 1}`: left limit, so `x = 1` gives `S_{q-1}`.
    Left,
}

fn count(x: f64, q: u64, side: Side) -> u64 {
    let t = x * q as f64;
    let f = t.floor();
    let c = if side == Side::Left && f == t { f - 1.0 } else { f };
    c.max(0.0) as u64
}

fn check_level(level: u32) -> Result<u64> {
    if level > MAX_GRAPH_LEVEL || level == 0 {
        return Err(Error::LevelTooLarge { level, max: MAX_GRAPH_LEVEL });
    }
    Ok(fibonacci_u64(level).unwrap())
}

/// `(-1)^n S_{[q_n x]}((-1)^n y / q_n) / q_n`: the finite-level golden
/// graph normalised onto the even branch, so odd levels approximate the
/// same limit.
pub fn s_oracle(x: f64, y: f64, level: u32, side: Side) -> Result<f64> {
    Ok(s_oracle_many(&[x], y, level, side)?[0])
}

pub fn s_oracle_many(xs: &[f64], y: f64, level: u32, side: Side) -> Result<Vec<f64>> {
    let q = check_level(level)?;
    let sign = if level % 2 == 0 { 1.0 } else { -1.0 };
    let orbit = RotationSpec::Golden.orbit(sign * y / q as f64)?;
    let counts: Vec<u64> = xs.iter().map(|&x| count(x, q, side)).collect();
    Ok(prefix_sums(KernelId::Cot, &orbit, &counts, PolePolicy::default())?.into_iter().map(|s| sign * s / q as f64).collect())
}

/// `(1/q) sum_{k=1}^{K} cot(pi (y/q + k p/q))` with `p/q = F_{n-1}/F_n` and
/// `K = [q x]` (or the left limit); for `y = 0` the pole at `k = q` is
/// excluded by capping `K` at `q - 1`.
pub fn t_function(x: f64, y: f64, level: u32, side: Side) -> Result<f64> {
    Ok(t_function_many(&[x], y, level, side)?[0])
}

pub fn t_function_many(xs: &[f64], y: f64, level: u32, side: Side) -> Result<Vec<f64>> {
    let q = check_level(level)?;
    let p = fibonacci_u64(level - 1).unwrap();
    let orbit = RotationSpec::rational(p as i64, q)?.orbit(y / q as f64)?;
    let counts: Vec<u64> = xs
        .iter()
        .map(|&x| {
            let c = count(x, q, side);
            if y == 0.0 {
                c.min(q - 1)
            } else {
                c
            }
        })
        .collect();
    Ok(prefix_sums(KernelId::Cot, &orbit, &counts, PolePolicy::default())?.into_iter().map(|s| s / q as f64).collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelfSimilarityReport {
    pub level: u32,
    pub max_residual: f64,
    pub argmax: f64,
}

/// `max |s(alpha x) + alpha s(x)|` over the grid with `s(alpha x)` taken at
/// level `n + 1` and `s(x)` at level `n`.
pub fn self_similarity_residual(grid: &[f64], level: u32, y: f64) -> Result<SelfSimilarityReport> {
    let ax: Vec<f64> = grid.iter().map(|x| ALPHA * x).collect();
    let a = s_oracle_many(&ax, y, level + 1, Side::Right)?;
    let b = s_oracle_many(grid, y, level, Side::Right)?;
    let (mut worst, mut at) = (0.0, f64::NAN);
    for (i, x) in grid.iter().enumerate() {
        let r = (a[i] + ALPHA * b[i]).abs();
        if r > worst || at.is_nan() {
            worst = r;
            at = *x;
        }
    }
    Ok(SelfSimilarityReport { level, max_residual: worst, argmax: at })
}

/// Best affine fit `t(x) ~ a + b t(alpha x)` over the grid, at one level;
/// returns `(a, b, max residual)`.
pub fn affine_fit_residual(grid: &[f64], level: u32) -> Result<(f64, f64, f64)> {
    let ax: Vec<f64> = grid.iter().map(|x| ALPHA * x).collect();
    let ta = t_function_many(&ax, 0.0, level, Side::Right)?;
    let t = t_function_many(grid, 0.0, level, Side::Right)?;
    let fit = linear_fit(&ta, &t);
    let worst = ta
        .iter()
        .zip(&t)
        .map(|(u, v)| (fit.intercept + fit.slope * u - v).abs())
        .fold(0.0, f64::max);
    Ok((fit.intercept, fit.slope, worst))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tau_sigma::{sigma_approx, tau_limit, tau_rational};

    #[test]
    fn left_limit_at_one_is_sigma() {
        for n in [20, 21] {
            let s = s_oracle(1.0, 0.0, n, Side::Left).unwrap();
            let sigma = sigma_approx(0.0, n).unwrap();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((s - sign * sigma).abs() < 1e-15);
        }
        let s = s_oracle(1.0, 0.07, 21, Side::Left).unwrap();
        assert!((s - sigma_approx(0.07, 20).unwrap()).abs() < 1e-3);
    }

    #[test]
    fn value_at_alpha() {
        let s = s_oracle(ALPHA, 0.0, 28, Side::Right).unwrap();
        assert!((s + ALPHA * 0.258).abs() < 1e-3, "{s}");
    }

    #[test]
    fn right_continuity_at_finite_level() {
        let q = fibonacci_u64(20).unwrap() as f64;
        for k in [17u64, 2000, 6000] {
            let a = s_oracle((k as f64 + 0.01) / q, 0.0, 20, Side::Right).unwrap();
            let b = s_oracle((k as f64 + 0.99) / q, 0.0, 20, Side::Right).unwrap();
            assert_eq!(a, b);
        }
        let x = 0.3;
        let a = s_oracle(x, 0.0, 24, Side::Right).unwrap();
        let b = s_oracle(x + ALPHA.powi(40), 0.0, 24, Side::Right).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn t_at_one_is_tau() {
        let y = 0.2;
        let t = t_function(1.0, y, 20, Side::Left).unwrap();
        let q = fibonacci_u64(20).unwrap();
        let p = fibonacci_u64(19).unwrap();
        assert!((t - tau_rational(p as i64, q, y).unwrap()).abs() < 1e-12);
        assert!((t - tau_limit(y)).abs() < 10.0 / q as f64);
        // y = 0: capped below the pole
        assert!(t_function(1.0, 0.0, 20, Side::Right).is_ok());
    }

    #[test]
    fn single_point_grid() {
        let one = self_similarity_residual(&[ALPHA], 20, 0.0).unwrap();
        let many = self_similarity_residual(&[0.1, ALPHA, 0.9], 20, 0.0).unwrap();
        assert_eq!(one.argmax, ALPHA);
        assert!(one.max_residual <= many.max_residual);
    }
}
