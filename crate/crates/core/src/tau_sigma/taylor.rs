use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use super::{richardson, sigma_approx, sigma_pole_distance, MAX_SIGMA_LEVEL};
use crate::corefuncs::{cot_polynomial, MAX_COT_DERIVATIVE};
use crate::fibarith::{fibonacci_u64, SQRT5};
use crate::numeric::{CompensatedSum, Phase};
use crate::{Error, Result, SCHEMA_VERSION};

/// Published low-order Taylor coefficients of sigma at 0 (coefficient of
/// `y^l`), and the tolerance each is matched to.
pub const REFERENCE_TAYLOR: [f64; 4] = [0.258, -1.24724, 0.6736, -1.38082];
pub const REFERENCE_TOLERANCE: [f64; 4] = [2e-3, 1e-2, 1e-2, 5e-2];

/// Start of the validated evaluation radius.
const INITIAL_RADIUS: f64 = 0.15;
const RADIUS_STEP: f64 = 0.01;
/// Gaps below this (relative) count as converged.
const GAP_FLOOR: f64 = 1e-10;
/// Step and half-width of the finite difference stencil.
const FD_STEP: f64 = 0.04;
const FD_LEVEL_CAP: u32 = 28;

/// How a coefficient candidate is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SigmaVariant {
    /// `(1 / (l! q^{l+1})) sum_{k<q} g^(l)(k alpha)`: Taylor coefficients.
    DerivativeFactorial,
    /// `(1 / q^{l+1}) sum_{k<q} g^(l)(k alpha)`: derivatives at 0.
    Derivative,
    /// Same sums weighted by `k`, divided by `l!`.
    KWeightedFactorial,
    /// Same sums weighted by `k`.
    KWeighted,
    /// Least squares polynomial through `sigma_approx` samples near 0.
    FiniteDifference,
}

impl SigmaVariant {
    pub const ALL: [SigmaVariant; 5] = [
        SigmaVariant::DerivativeFactorial,
        SigmaVariant::Derivative,
        SigmaVariant::KWeightedFactorial,
        SigmaVariant::KWeighted,
        SigmaVariant::FiniteDifference,
    ];
}

/// One candidate reading: its extrapolated coefficients and how far the
/// low orders sit from [`REFERENCE_TAYLOR`] in units of the tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaCandidate {
    pub variant: SigmaVariant,
    pub coefficients: Vec<f64>,
    pub score: f64,
}

/// Taylor coefficients `c_l` with `sigma(y) ~ sum c_l y^l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SigmaTable {
    pub schema_version: u32,
    pub order: usize,
    pub levels: Vec<u32>,
    pub coefficients: Vec<f64>,
    /// Last raw even-level gap of each coefficient.
    pub residuals: Vec<f64>,
    pub radius: f64,
    pub variant: SigmaVariant,
    pub level_used: u32,
    /// Distance from 0 to the nearest pole of the finite-level sums.
    pub pole_distance: f64,
    pub candidates: Vec<SigmaCandidate>,
    /// Raw per-level values of the stored variant, `history[level][l]`.
    pub history: Vec<Vec<f64>>,
}

impl SigmaTable {
    /// Bound on `|sigma(y) - sigma_eval(y)|`: coefficient residuals plus a
    /// geometric tail whose ratio is `|y| / pole_distance`, doubled.
    pub fn truncation_bound(&self, y: f64) -> f64 {
        let a = y.abs();
        let t = a / self.pole_distance;
        if t >= 1.0 {
            return f64::INFINITY;
        }
        let coeff: f64 = self.residuals.iter().enumerate().map(|(l, r)| r * a.powi(l as i32)).sum();
        let last = self.coefficients[self.order].abs() * a.powi(self.order as i32);
        coeff + 2.0 * last * t / (1.0 - t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("table serialises")
    }
}

/// Horner evaluation inside the validated radius.
pub fn sigma_eval(table: &SigmaTable, y: f64) -> Result<f64> {
    if !(y.abs() <= table.radius) {
        return Err(Error::Domain(format!("|y| = {} exceeds the table radius {}", y.abs(), table.radius)));
    }
    Ok(table.coefficients.iter().rev().fold(0.0, |acc, c| acc * y + c))
}

/// Derivative sums at one level: (plain, k-weighted), each `[l]`.
fn derivative_sums(order: usize, level: u32) -> (Vec<f64>, Vec<f64>) {
    let q = fibonacci_u64(level).unwrap();
    let polys: Vec<&[i128]> = (0..=order).map(|l| cot_polynomial(l).unwrap()).collect();
    let polys: Vec<Vec<f64>> = polys.iter().map(|p| p.iter().map(|&c| c as f64).collect()).collect();
    let mut plain = vec![CompensatedSum::new(); order + 1];
    let mut weighted = vec![CompensatedSum::new(); order + 1];
    for k in 1..q {
        let d = Phase::GOLDEN.times(k as u128).signed_frac();
        let c = 1.0 / (PI * d).tan();
        for (l, p) in polys.iter().enumerate() {
            let v = p.iter().rev().fold(0.0, |acc, a| acc * c + a);
            plain[l].add(v);
            weighted[l].add(k as f64 * v);
        }
    }
    let qf = q as f64;
    let fin = |s: &[CompensatedSum]| -> Vec<f64> {
        s.iter().enumerate().map(|(l, a)| a.value() * PI.powi(l as i32) / qf.powi(l as i32 + 1)).collect()
    };
    (fin(&plain), fin(&weighted))
}

/// Polynomial of degree `order` fitted to sigma_approx on `[-J h, J h]`.
fn finite_difference(order: usize, level: u32) -> Result<Vec<f64>> {
    let half = order as i32 + 2;
    let ys: Vec<f64> = (-half..=half).map(|j| j as f64 * FD_STEP).collect();
    let vs: Vec<f64> = ys.iter().map(|&y| sigma_approx(y, level)).collect::<Result<_>>()?;
    // normal equations in the scaled variable y / h
    let n = order + 1;
    let mut m = vec![vec![0.0; n + 1]; n];
    for (y, v) in ys.iter().zip(&vs) {
        let t = y / FD_STEP;
        for i in 0..n {
            for j in 0..n {
                m[i][j] += t.powi((i + j) as i32);
            }
            m[i][n] += v * t.powi(i as i32);
        }
    }
    let sol = solve(m);
    Ok(sol.iter().enumerate().map(|(l, c)| c / FD_STEP.powi(l as i32)).collect())
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve(mut m: Vec<Vec<f64>>) -> Vec<f64> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        m.swap(col, piv);
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for j in col..=n {
                m[row][j] -= f * m[col][j];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|j| m[i][j] * x[j]).sum();
        x[i] = (m[i][n] - s) / m[i][i];
    }
    x
}

fn factorial(l: usize) -> f64 {
    (1..=l).map(|i| i as f64).product()
}

fn score(coeffs: &[f64]) -> f64 {
    REFERENCE_TAYLOR
        .iter()
        .zip(REFERENCE_TOLERANCE)
        .zip(coeffs)
        .map(|((r, t), c)| (c - r).abs() / t)
        .fold(0.0, f64::max)
}

fn extrapolate(history: &[Vec<f64>], order: usize) -> (Vec<f64>, Vec<f64>) {
    (0..=order)
        .map(|l| richardson(&history.iter().map(|h| h[l]).collect::<Vec<_>>()))
        .unzip()
}

fn check_monotone(history: &[Vec<f64>], levels: &[u32], variant: SigmaVariant) -> Result<()> {
    let order = history[0].len();
    for l in 0..order {
        let gaps: Vec<f64> = history.windows(2).map(|w| (w[1][l] - w[0][l]).abs()).collect();
        for (i, g) in gaps.windows(2).enumerate() {
            let floor = GAP_FLOOR * (1.0 + history[i + 2][l].abs());
            if g[1] > g[0] && g[1] > floor {
                return Err(Error::NonConvergence(format!(
                    "{variant:?} coefficient {l}: even-level gaps {gaps:?} grow at level {}",
                    levels[i + 2]
                )));
            }
        }
    }
    Ok(())
}

/// Largest radius (from 0.15 in steps of 0.01, at most 1/sqrt 5) at which
/// the even-level gaps of sigma_approx at both `+r` and `-r` still shrink.
fn validated_radius(levels: &[u32]) -> Result<f64> {
    let mut use_levels: Vec<u32> = levels.iter().copied().filter(|&n| n <= FD_LEVEL_CAP).collect();
    if use_levels.len() < 3 {
        use_levels = levels.iter().copied().take(3).collect();
    }
    let use_levels = &use_levels[use_levels.len().saturating_sub(3)..];
    if use_levels.len() < 3 {
        return Ok(INITIAL_RADIUS);
    }
    let limit = 1.0 / SQRT5;
    let shrinks = |r: f64| -> Result<bool> {
        for y in [r, -r] {
            let v: Vec<f64> = use_levels.iter().map(|&n| sigma_approx(y, n)).collect::<Result<_>>()?;
            if (v[2] - v[1]).abs() >= (v[1] - v[0]).abs() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let mut radius = INITIAL_RADIUS;
    loop {
        let next = (radius + RADIUS_STEP).min(limit);
        if next <= radius || !shrinks(next)? {
            return Ok(radius);
        }
        radius = next;
    }
}

/// Builds the Taylor table of order `order` from the given even levels.
pub fn sigma_taylor(order: usize, levels: &[u32]) -> Result<SigmaTable> {
    if order > MAX_COT_DERIVATIVE {
        return Err(Error::OrderTooLarge { order, max: MAX_COT_DERIVATIVE });
    }
    if levels.len() < 2 {
        return Err(Error::Domain("sigma table needs at least two levels".into()));
    }
    if levels.iter().any(|n| n % 2 != 0) || levels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain(format!("levels must be even and increasing, got {levels:?}")));
    }
    if let Some(&n) = levels.iter().find(|&&n| n > MAX_SIGMA_LEVEL || n < 2) {
        return Err(Error::LevelTooLarge { level: n, max: MAX_SIGMA_LEVEL });
    }

    let sums: Vec<(Vec<f64>, Vec<f64>)> = levels.iter().map(|&n| derivative_sums(order, n)).collect();
    let fact: Vec<f64> = (0..=order).map(factorial).collect();
    let per_level = |f: &dyn Fn(&(Vec<f64>, Vec<f64>)) -> Vec<f64>| -> Vec<Vec<f64>> { sums.iter().map(f).collect() };
    let mut histories: Vec<(SigmaVariant, Vec<Vec<f64>>)> = vec![
        (SigmaVariant::DerivativeFactorial, per_level(&|s| s.0.iter().zip(&fact).map(|(a, f)| a / f).collect())),
        (SigmaVariant::Derivative, per_level(&|s| s.0.clone())),
        (SigmaVariant::KWeightedFactorial, per_level(&|s| s.1.iter().zip(&fact).map(|(a, f)| a / f).collect())),
        (SigmaVariant::KWeighted, per_level(&|s| s.1.clone())),
    ];
    let mut fd_levels: Vec<u32> = levels.iter().copied().filter(|&n| n <= FD_LEVEL_CAP).collect();
    if fd_levels.len() < 2 {
        fd_levels = levels[..2].to_vec();
    }
    let fd: Vec<Vec<f64>> = fd_levels.iter().map(|&n| finite_difference(order, n)).collect::<Result<_>>()?;
    histories.push((SigmaVariant::FiniteDifference, fd));

    let candidates: Vec<SigmaCandidate> = histories
        .iter()
        .map(|(v, h)| {
            let coefficients = extrapolate(h, order).0;
            SigmaCandidate { variant: *v, score: score(&coefficients), coefficients }
        })
        .collect();
    // Among the readings that reproduce the reference values, the exact
    // derivative sums come first; otherwise take the closest reading.
    let chosen = candidates
        .iter()
        .position(|c| c.score <= 1.0)
        .unwrap_or_else(|| {
            (0..candidates.len()).min_by(|&a, &b| candidates[a].score.total_cmp(&candidates[b].score)).unwrap()
        });
    let (variant, history) = histories.swap_remove(chosen);
    let history_levels = if variant == SigmaVariant::FiniteDifference { fd_levels } else { levels.to_vec() };
    check_monotone(&history, &history_levels, variant)?;
    let (coefficients, residuals) = extrapolate(&history, order);
    let level_used = *history_levels.last().unwrap();
    Ok(SigmaTable {
        schema_version: SCHEMA_VERSION,
        order,
        levels: history_levels,
        coefficients,
        residuals,
        radius: validated_radius(levels)?,
        variant,
        level_used,
        pole_distance: sigma_pole_distance(level_used),
        candidates,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_order_table() {
        let t = sigma_taylor(4, &[16, 18, 20, 22]).unwrap();
        assert_eq!(t.variant, SigmaVariant::DerivativeFactorial);
        for l in 0..4 {
            assert!((t.coefficients[l] - REFERENCE_TAYLOR[l]).abs() < REFERENCE_TOLERANCE[l], "l={l}");
        }
        assert!(t.radius >= 0.15 && t.radius <= 1.0 / SQRT5 + 1e-12);
        assert_eq!(sigma_eval(&t, 0.0).unwrap(), t.coefficients[0]);
        assert!(sigma_eval(&t, t.radius + 1e-9).is_err());
        let raw = t.candidates.iter().find(|c| c.variant == SigmaVariant::Derivative).unwrap();
        assert!(raw.score > 1.0);
    }

    #[test]
    fn deterministic() {
        let a = sigma_taylor(3, &[14, 16, 18]).unwrap();
        let b = sigma_taylor(3, &[14, 16, 18]).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn bad_inputs() {
        assert!(sigma_taylor(4, &[20]).is_err());
        assert!(sigma_taylor(4, &[21, 23]).is_err());
        assert!(sigma_taylor(4, &[22, 20]).is_err());
        assert!(sigma_taylor(13, &[20, 22]).is_err());
        assert!(sigma_taylor(2, &[36, 38]).is_err());
    }

    #[test]
    fn solver() {
        let x = solve(vec![vec![2.0, 1.0, 3.0], vec![1.0, 3.0, 5.0]]);
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
    }
}
