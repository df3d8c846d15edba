//! Limits of Birkhoff sums for kernels other than `cot`: the monotone
//! `csc^2` graph, the `sec` attractor, log-kernel growth, the difference
//! functions of the sawtooth and log kernels, and the theta-square series.

mod attractor;
mod modular;

pub use attractor::{sec_attractor, AttractorFamily};
pub use modular::{modular_check, ModularReading, ModularReport};

use serde::{Deserialize, Serialize};

use crate::birkhoff::{birkhoff_graph, prefix_sums, GraphSamples, Parity, RotationSpec, MAX_GRAPH_LEVEL};
use crate::corefuncs::{KernelId, PolePolicy};
use crate::fibarith::{fibonacci_u64, ALPHA};
use crate::numeric::{linear_fit, quadratic_fit, QuadraticFit};
use crate::{Error, Result};

/// `S_{[x q]}(y / q) / q^2` for `csc^2`, on `grid + 1` points.
pub fn csc2_graph(y: f64, level: u32, grid: usize) -> Result<GraphSamples> {
    if level > 34 {
        return Err(Error::LevelTooLarge { level, max: 34 });
    }
    birkhoff_graph(KernelId::Csc2, &RotationSpec::Golden, y, level, grid, 2)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Csc2Scaling {
    pub level: u32,
    /// `max |s'(alpha x) - alpha s'(x)|`.
    pub linear_residual: f64,
    /// `max |s'(alpha x) - alpha^2 s'(x)|`.
    pub square_residual: f64,
}

/// Compares the `csc^2` graph at `alpha x` (level `n + 1`) with the graph
/// at `x` (level `n`) under both candidate scalings.
pub fn csc2_scaling(level: u32, grid: &[f64]) -> Result<Csc2Scaling> {
    let values = |xs: &[f64], n: u32| -> Result<Vec<f64>> {
        let q = level_q(n)?;
        let orbit = RotationSpec::Golden.orbit(0.0)?;
        let counts: Vec<u64> = xs.iter().map(|x| (x * q as f64).floor() as u64).collect();
        let s = prefix_sums(KernelId::Csc2, &orbit, &counts, PolePolicy::default())?;
        Ok(s.into_iter().map(|v| v / (q as f64 * q as f64)).collect())
    };
    let ax: Vec<f64> = grid.iter().map(|x| ALPHA * x).collect();
    let a = values(&ax, level + 1)?;
    let b = values(grid, level)?;
    let worst = |c: f64| a.iter().zip(&b).map(|(u, v)| (u - c * v).abs()).fold(0.0, f64::max);
    Ok(Csc2Scaling { level, linear_residual: worst(ALPHA), square_residual: worst(ALPHA * ALPHA) })
}

fn level_q(level: u32) -> Result<u64> {
    if level == 0 || level > MAX_GRAPH_LEVEL {
        return Err(Error::LevelTooLarge { level, max: MAX_GRAPH_LEVEL });
    }
    Ok(fibonacci_u64(level).unwrap())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogBoundReport {
    pub theta: f64,
    pub rotation: RotationSpec,
    pub m_max: u64,
    /// Checkpoints `m` and the running maximum of `|S_m| / ln m` up to each.
    pub checkpoints: Vec<u64>,
    pub running_max: Vec<f64>,
    pub max_ratio: f64,
    /// Slope of the running maximum against `log10 m`, over `m >= 100`.
    pub slope_per_decade: f64,
    pub bounded: bool,
}

const CHECKPOINTS_PER_DECADE: f64 = 10.0;
const FIT_START: u64 = 100;
const SLOPE_LIMIT: f64 = 1e-2;

/// Running maxima of `|sum_{k<=m} G(theta + k beta)| / ln m`, `m = 2..=m_max`,
/// for the log kernel as evaluated by `corefuncs`.
pub fn log_bound_check(theta: f64, m_max: u64, rot: &RotationSpec) -> Result<LogBoundReport> {
    if m_max < 2 {
        return Err(Error::Domain("m_max must be at least 2".into()));
    }
    if m_max > crate::birkhoff::MAX_DIRECT_TERMS {
        return Err(Error::CountOverflow(m_max));
    }
    let orbit = rot.orbit(theta)?;
    let policy = PolePolicy::default();
    let mut marks = Vec::new();
    let mut t = 2f64.log10();
    loop {
        let m = (10f64.powf(t).round() as u64).clamp(2, m_max);
        if marks.last() != Some(&m) {
            marks.push(m);
        }
        if m == m_max {
            break;
        }
        t += 1.0 / CHECKPOINTS_PER_DECADE;
    }
    let mut acc = crate::numeric::CompensatedSum::new();
    let mut best = 0.0f64;
    let mut running = Vec::with_capacity(marks.len());
    let mut next = 0;
    for k in 1..=m_max {
        let p = orbit.phase(k);
        let v = crate::corefuncs::eval_phase(KernelId::LogSin, p, policy)
            .map_err(|_| Error::OrbitPole { kernel: "logsin", index: k, x: p.to_f64() })?;
        acc.add(v);
        if k >= 2 {
            best = best.max(acc.value().abs() / (k as f64).ln());
        }
        if marks[next] == k {
            running.push(best);
            next += 1;
        }
    }
    let (lx, ly): (Vec<f64>, Vec<f64>) = marks
        .iter()
        .zip(&running)
        .filter(|(m, _)| **m >= FIT_START)
        .map(|(m, r)| ((*m as f64).log10(), *r))
        .unzip();
    let slope = if lx.len() >= 2 { linear_fit(&lx, &ly).slope } else { 0.0 };
    Ok(LogBoundReport {
        theta,
        rotation: *rot,
        m_max,
        checkpoints: marks,
        max_ratio: best,
        running_max: running,
        slope_per_decade: slope,
        bounded: slope < SLOPE_LIMIT,
    })
}

/// `x -> scale * (S_{[x q_n]}(p_{n+1}/q_{n+1}) - S_{[x q_n]}(p_n/q_n))`, sums from
/// `theta = 0`. Points `x` are used as given; `x = 1` makes the log kernel
/// hit its pole.
pub fn hecke_difference(xs: &[f64], level: u32, kernel: KernelId, scale: f64) -> Result<GraphSamples> {
    if !matches!(kernel, KernelId::Sawtooth | KernelId::LogSin) {
        return Err(Error::Domain(format!("difference functions use sawtooth or logsin, not {}", kernel.name())));
    }
    let q = level_q(level)?;
    let q_next = fibonacci_u64(level + 1).unwrap();
    let p = fibonacci_u64(level - 1).unwrap();
    let counts: Vec<u64> = xs.iter().map(|x| (x * q as f64).floor() as u64).collect();
    let policy = PolePolicy::default();
    let near = RotationSpec::rational(q as i64, q_next)?;
    let far = RotationSpec::rational(p as i64, q)?;
    let a = prefix_sums(kernel, &near.orbit(0.0)?, &counts, policy)?;
    let b = prefix_sums(kernel, &far.orbit(0.0)?, &counts, policy)?;
    Ok(GraphSamples {
        xs: xs.to_vec(),
        values: a.iter().zip(&b).map(|(u, v)| scale * (u - v)).collect(),
        level,
        parity: Parity::of(level),
        offset_y: 0.0,
        kernel,
        normalization: 0,
        rotation: near,
    })
}

/// Least squares `f(x) ~ c x^2` over the samples.
pub fn hecke_fit(samples: &GraphSamples) -> QuadraticFit {
    quadratic_fit(&samples.xs, &samples.values)
}

/// Scale turning the unit sawtooth `x - [x] - 1/2` into `2 pi (x - [x] - 1/2)`.
pub const HECKE_SCALE: f64 = 2.0 * std::f64::consts::PI;

/// `(1 + alpha^2) pi / sqrt 5`.
pub fn hecke_constant() -> f64 {
    (1.0 + ALPHA * ALPHA) * std::f64::consts::PI / crate::fibarith::SQRT5
}
