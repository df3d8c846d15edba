//! The rational limit function `tau` and the golden cotangent limit
//! `sigma(y) = lim (1/q_n) sum_{k=1}^{q_n - 1} cot(pi (y/q_n + k alpha))`
//! over even levels, with its Taylor table.

mod taylor;

pub use taylor::{
    sigma_eval, sigma_taylor, SigmaCandidate, SigmaTable, SigmaVariant, REFERENCE_TAYLOR,
    REFERENCE_TOLERANCE,
};

use std::f64::consts::PI;

use crate::birkhoff::{orbit_sum, RotationSpec};
use crate::corefuncs::{cot_derivative, eval_kernel, eval_phase, KernelId, PolePolicy};
use crate::fibarith::{fibonacci_u64, ALPHA};
use crate::numeric::{CompensatedSum, Phase};
use crate::{Error, Result};

/// Deepest level for direct sigma sums.
pub const MAX_SIGMA_LEVEL: u32 = 36;

fn check_coprime(p: i64, q: u64) -> Result<()> {
    RotationSpec::rational(p, q).map(|_| ())
}

/// `cot(pi y) - cot(pi y / q) / q`, which does not depend on `p`.
pub fn tau_rational(p: i64, q: u64, y: f64) -> Result<f64> {
    check_coprime(p, q)?;
    if q == 1 {
        return Ok(0.0);
    }
    let g = eval_kernel(KernelId::Cot, y)?;
    Ok(g - eval_kernel(KernelId::Cot, y / q as f64)? / q as f64)
}

/// `(1/q) sum_{k=1}^{q-1} cot(pi (y/q + k p/q))`, summed directly.
pub fn tau_rational_sum(p: i64, q: u64, y: f64) -> Result<f64> {
    check_coprime(p, q)?;
    let qi = q as i128;
    let mut acc = CompensatedSum::new();
    for k in 1..qi {
        let r = (k * p as i128).rem_euclid(qi) as u64;
        acc.add(eval_kernel(KernelId::Cot, crate::birkhoff::reduced_point(y, r, q))?);
    }
    Ok(acc.value() / q as f64)
}

/// `cot(pi y) - 1/(pi y)`, continued by 0 at the origin. Near 0 the Laurent
/// series `-(pi/3) y - (pi^3/45) y^3 - (2 pi^5/945) y^5 - (pi^7/4725) y^7`
/// replaces the cancelling difference.
pub fn tau_limit(y: f64) -> f64 {
    if y.abs() < 1e-3 {
        let t = PI * y;
        let t2 = t * t;
        return -t * (1.0 / 3.0 + t2 * (1.0 / 45.0 + t2 * (2.0 / 945.0 + t2 / 4725.0)));
    }
    1.0 / (PI * y).tan() - 1.0 / (PI * y)
}

/// Scaled residual `|lhs - rhs| / (1 + |rhs|)` of
/// `(1/q^{l+1}) sum_{k=1}^{q-1} g^(l)(y/q + k/q) = g^(l)(y) - g^(l)(y/q)/q^{l+1}`.
pub fn tau_derivative_identity(l: usize, q: u64, y: f64) -> Result<f64> {
    tau_derivative_residual(l, q, y, l as i32 + 1)
}

/// Same identity with the correction term divided by `q^power` instead.
pub fn tau_derivative_residual(l: usize, q: u64, y: f64, power: i32) -> Result<f64> {
    if l > 6 {
        return Err(Error::OrderTooLarge { order: l, max: 6 });
    }
    let qf = q as f64;
    let mut acc = CompensatedSum::new();
    for k in 1..q {
        acc.add(cot_derivative(l, (y + k as f64) / qf)?);
    }
    let lhs = acc.value() / qf.powi(l as i32 + 1);
    let rhs = cot_derivative(l, y)? - cot_derivative(l, y / qf)? / qf.powi(power);
    Ok((lhs - rhs).abs() / (1.0 + rhs.abs()))
}

/// `(1/q_n) sum_{k=1}^{q_n - 1} cot(pi (y/q_n + k alpha))`.
pub fn sigma_approx(y: f64, level: u32) -> Result<f64> {
    if level > MAX_SIGMA_LEVEL {
        return Err(Error::LevelTooLarge { level, max: MAX_SIGMA_LEVEL });
    }
    let q = fibonacci_u64(level).unwrap();
    let orbit = RotationSpec::Golden.orbit(y / q as f64)?;
    let policy = PolePolicy::default();
    let s = orbit_sum(&orbit, 1, q.saturating_sub(1), |p| eval_phase(KernelId::Cot, p, policy), "cot")?;
    Ok(s / q as f64)
}

/// Richardson-accelerated limit of `sigma_approx(y, n)` along increasing
/// even levels, assuming gaps contract by `alpha^4` per even step.
/// Returns the estimate and the last raw gap.
pub fn sigma_extrapolated(y: f64, levels: &[u32]) -> Result<(f64, f64)> {
    let vals: Vec<f64> = levels.iter().map(|&n| sigma_approx(y, n)).collect::<Result<_>>()?;
    Ok(richardson(&vals))
}

/// Ratio by which successive even-level gaps shrink.
pub const EVEN_GAP_RATIO: f64 = ALPHA * ALPHA * ALPHA * ALPHA;

pub(crate) fn richardson(vals: &[f64]) -> (f64, f64) {
    match vals {
        [] => (f64::NAN, f64::INFINITY),
        [v] => (*v, f64::INFINITY),
        [.., a, b] => {
            let gap = b - a;
            (b + gap * EVEN_GAP_RATIO / (1.0 - EVEN_GAP_RATIO), gap.abs())
        }
    }
}

/// Distance from 0 to the nearest pole of `y -> sigma_approx(y, level)`,
/// i.e. `min_k q |signed_frac(k alpha)|` over `1 <= k < q`. It equals
/// `q_n |q_{n-1} alpha - p_{n-1}|`, close to `phi / sqrt 5`.
pub fn sigma_pole_distance(level: u32) -> f64 {
    let q = fibonacci_u64(level).unwrap_or(u64::MAX);
    let prev = fibonacci_u64(level.saturating_sub(1)).unwrap_or(1);
    (q as f64) * Phase::GOLDEN.times(prev as u128).signed_frac().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_examples() {
        assert_eq!(tau_rational(1, 1, 0.3).unwrap(), 0.0);
        let v = tau_rational(2, 3, 0.3).unwrap();
        let d = tau_rational_sum(2, 3, 0.3).unwrap();
        assert!((v - d).abs() < 1e-14);
        // cot(0.3 pi) - cot(0.1 pi)/3
        assert!((v + 0.299_352_0).abs() < 1e-7, "{v}");
        assert!((tau_rational(2, 3, -0.3).unwrap() + v).abs() < 1e-15);
        assert!(matches!(tau_rational(2, 4, 0.3), Err(Error::NotCoprime { .. })));
        assert!(tau_rational(2, 3, 1.0).is_err());
    }

    #[test]
    fn tau_limit_values() {
        assert_eq!(tau_limit(0.0), 0.0);
        assert!((tau_limit(0.5) + 2.0 / PI).abs() < 1e-15);
        // continuity across the series switch
        let (a, b) = (tau_limit(0.999e-3), tau_limit(1.001e-3));
        assert!((a - b - PI / 3.0 * 2e-6).abs() < 1e-10, "{}", a - b);
    }

    #[test]
    fn tau_slope_is_negative() {
        let h = 1e-4;
        let slope = (tau_limit(h) - tau_limit(-h)) / (2.0 * h);
        assert!((slope + PI / 3.0).abs() < 1e-6, "{slope}");
    }

    #[test]
    fn derivative_identity() {
        assert!(tau_derivative_identity(0, 13, 0.37).unwrap() < 1e-10);
        assert!(tau_derivative_identity(1, 5, 0.2).unwrap() < 1e-8);
        assert!(tau_derivative_identity(2, 8, 0.3).unwrap() < 1e-8);
        for q in [5, 8, 13] {
            for l in 0..=6 {
                assert!(tau_derivative_identity(l, q, 0.41).unwrap() < 1e-8, "l={l} q={q}");
            }
        }
        // dividing the correction by q^l instead fails from l = 1 on
        assert!(tau_derivative_residual(1, 5, 0.2, 1).unwrap() > 1e-3);
    }

    #[test]
    fn sigma_branches() {
        let even = sigma_approx(0.0, 24).unwrap();
        let odd = sigma_approx(0.0, 25).unwrap();
        assert!((even - 0.258).abs() < 2e-3);
        assert!((odd + 0.258).abs() < 2e-3);
    }

    #[test]
    fn sigma_is_not_odd() {
        let s = sigma_approx(0.1, 22).unwrap() + sigma_approx(-0.1, 22).unwrap();
        let t = tau_limit(0.1) + tau_limit(-0.1);
        assert!(s.abs() > 10.0 * t.abs().max(1e-12));
    }

    #[test]
    fn pole_distance() {
        let d = sigma_pole_distance(24);
        assert!((d - crate::fibarith::PHI / crate::fibarith::SQRT5).abs() < 1e-8);
    }

    #[test]
    fn even_level_gaps_contract_geometrically() {
        for y in [0.0, 0.1, -0.1, 0.2, -0.2] {
            let v: Vec<f64> = (10..=17).map(|n| sigma_approx(y, 2 * n).unwrap()).collect();
            let gaps: Vec<f64> = v.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
            for w in gaps.windows(2) {
                let r = w[1] / w[0];
                assert!(r < ALPHA * ALPHA, "y={y}: ratio {r}");
                assert!(r > EVEN_GAP_RATIO / 2.0 && r < 2.0 * EVEN_GAP_RATIO, "y={y}: ratio {r}");
            }
        }
    }

    #[test]
    fn sigma_minus_tau_is_smooth() {
        let level = 24;
        let (p, q) = (fibonacci_u64(level - 1).unwrap() as i64, fibonacci_u64(level).unwrap());
        let h = 1e-3;
        let diff: Vec<f64> = (0..600)
            .map(|i| -0.3 + (i as f64 + 0.5) * h)
            .map(|y| sigma_approx(y, level).unwrap() - tau_rational(p, q, y).unwrap())
            .collect();
        let second = diff.windows(3).fold(0.0f64, |m, w| m.max((w[2] - 2.0 * w[1] + w[0]).abs()));
        // reference: y^2, whose second difference is 2 h^2
        assert!(second < 100.0 * 2.0 * h * h, "{second}");
    }
}
