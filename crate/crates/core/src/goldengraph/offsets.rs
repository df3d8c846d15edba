use std::f64::consts::PI;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{fib_ratio, fib_times_alpha_power, parity_sign};
use crate::fibarith::{alpha_power, fibonacci_u64, BetaExpansion, ALPHA};
use crate::numeric::Phase;
use crate::tau_sigma::{sigma_eval, SigmaTable};
use crate::{Error, Result};

/// Offsets quoted alongside the worked example `x = 23866 / 46368`,
/// `y = 0`, one per digit of `{2, 5, 7, 10}`.
pub const REFERENCE_OFFSETS: [f64; 4] = [0.0, -0.0344396, -0.026314, 0.00118918];

/// Which partial sum of the digits feeds offset `k` in the closed-form family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Prefix {
    /// `x_k`: digits `1..=k`.
    Current,
    /// `x_{k-1}`: digits before `k`.
    Previous,
}

/// Power of alpha applied to the family's fractional part.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Power {
    Zero,
    One,
    /// `alpha^{e_k}`, the digit's own exponent.
    Digit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OffsetVariant {
    /// Exact start points of the Zeckendorf blocks, with the pole term
    /// of each block's first point kept separately.
    Block,
    /// `y + sign * lim signed_frac(x' q_n) q_n alpha^power` over even `n`.
    Family { sign: i8, power: Power, prefix: Prefix },
}

/// Variant used by [`s_series`] callers and the estimator.
pub const CALIBRATED_VARIANT: OffsetVariant = OffsetVariant::Block;

impl OffsetVariant {
    pub fn family() -> Vec<OffsetVariant> {
        let mut out = Vec::new();
        for prefix in [Prefix::Current, Prefix::Previous] {
            for power in [Power::Zero, Power::One, Power::Digit] {
                for sign in [1, -1] {
                    out.push(OffsetVariant::Family { sign, power, prefix });
                }
            }
        }
        out
    }

    pub fn all() -> Vec<OffsetVariant> {
        let mut out = vec![OffsetVariant::Block];
        out.extend(Self::family());
        out
    }
}

impl fmt::Display for OffsetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OffsetVariant::Block => write!(f, "block"),
            OffsetVariant::Family { sign, power, prefix } => {
                let p = match prefix {
                    Prefix::Current => "x_k",
                    Prefix::Previous => "x_(k-1)",
                };
                let a = match power {
                    Power::Zero => "1",
                    Power::One => "alpha",
                    Power::Digit => "alpha^e",
                };
                write!(f, "family({}{p}, {a})", if *sign > 0 { "+" } else { "-" })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OffsetSequence {
    pub variant: OffsetVariant,
    pub y: f64,
    pub exponents: Vec<u32>,
    pub levels: Vec<u32>,
    /// Offsets in the units of the full orbit; the first is `y` for blocks.
    pub offsets: Vec<f64>,
    /// Arguments handed to sigma, one per digit.
    pub sigma_args: Vec<f64>,
    /// Change of each sigma argument between the last two levels.
    pub gaps: Vec<f64>,
    pub converged: Vec<bool>,
    /// Whether every digit after the first adds `1 / (pi u)`.
    pub pole_terms: bool,
}

const CONVERGENCE_TOL: f64 = 1e-8;
// Past this the golden phase loses bits under `times`.
const MAX_FAMILY_LEVEL: u32 = 60;

/// Block start offsets at level `n` (even or odd), for exponents `e`:
/// returns `(global offset, own-unit offset, sigma argument)` per digit.
pub(crate) fn block_offsets(exponents: &[u32], y: f64, n: u32) -> Result<Vec<(f64, f64, f64)>> {
    let mut out = Vec::with_capacity(exponents.len());
    for (b, &e) in exponents.iter().enumerate() {
        if e + 2 > n {
            return Err(Error::Domain(format!("level {n} too small for exponent {e}")));
        }
        let m = n - e;
        let mut own = y * fib_ratio(m, n);
        for &ei in &exponents[..b] {
            let mi = n - ei;
            own -= parity_sign(mi) * fib_times_alpha_power(m, mi);
        }
        let global = if b == 0 { y } else { own / fib_ratio(m, n) };
        out.push((global, own, parity_sign(m) * own));
    }
    Ok(out)
}

fn family_offsets(
    exponents: &[u32],
    y: f64,
    n: u32,
    sign: i8,
    power: Power,
    prefix: Prefix,
) -> Result<Vec<f64>> {
    if n > MAX_FAMILY_LEVEL {
        return Err(Error::LevelTooLarge { level: n, max: MAX_FAMILY_LEVEL });
    }
    let q = fibonacci_u64(n).unwrap();
    let mut out = Vec::with_capacity(exponents.len());
    for k in 0..exponents.len() {
        let upto = match prefix {
            Prefix::Current => k + 1,
            Prefix::Previous => k,
        };
        // x' = A + B alpha; A q is an integer, so only B q alpha matters
        let b: i128 = exponents[..upto]
            .iter()
            .map(|&e| alpha_power(e).b.to_i128().expect("small exponent"))
            .sum();
        let steps = (b.wrapping_mul(q as i128)) as u128;
        let frac = Phase::GOLDEN.times(steps).signed_frac();
        let scale = match power {
            Power::Zero => 1.0,
            Power::One => ALPHA,
            Power::Digit => ALPHA.powi(exponents[k] as i32),
        };
        out.push(y + sign as f64 * frac * q as f64 * scale);
    }
    Ok(out)
}

/// Offsets for `rep` evaluated at each level in turn; the values reported
/// are those of the last level, and `gaps` measures the change from the
/// level before it.
pub fn compute_offsets(
    rep: &BetaExpansion,
    y: f64,
    levels: &[u32],
    variant: OffsetVariant,
) -> Result<OffsetSequence> {
    if levels.is_empty() {
        return Err(Error::Domain("no levels given".into()));
    }
    if levels.iter().any(|l| l % 2 != 0) {
        return Err(Error::Domain("offset levels must be even".into()));
    }
    let e = &rep.exponents;
    let mut history: Vec<(Vec<f64>, Vec<f64>)> = Vec::new();
    for &n in levels {
        history.push(match variant {
            OffsetVariant::Block => {
                let v = block_offsets(e, y, n)?;
                (v.iter().map(|t| t.0).collect(), v.iter().map(|t| t.2).collect())
            }
            OffsetVariant::Family { sign, power, prefix } => {
                let v = family_offsets(e, y, n, sign, power, prefix)?;
                (v.clone(), v)
            }
        });
    }
    let (offsets, args) = history.last().cloned().unwrap();
    let gaps: Vec<f64> = if history.len() >= 2 {
        let prev = &history[history.len() - 2].1;
        args.iter().zip(prev).map(|(a, b)| (a - b).abs()).collect()
    } else {
        vec![f64::INFINITY; args.len()]
    };
    Ok(OffsetSequence {
        variant,
        y,
        exponents: e.clone(),
        levels: levels.to_vec(),
        offsets,
        sigma_args: args,
        converged: gaps.iter().map(|g| *g < CONVERGENCE_TOL).collect(),
        gaps,
        pole_terms: variant == OffsetVariant::Block,
    })
}

/// `sum_j (-alpha)^{e_j} sigma(u_j)`, plus `(-alpha)^{e_j} / (pi u_j)` for
/// every digit after the first when the offsets come from blocks. This is
/// the even-level limit of `S_{[q x]}(y / q) / q` from the left.
pub fn s_series(table: &SigmaTable, offsets: &OffsetSequence) -> Result<f64> {
    let mut total = 0.0;
    for (j, (&e, &u)) in offsets.exponents.iter().zip(&offsets.sigma_args).enumerate() {
        let w = parity_sign(e) * ALPHA.powi(e as i32);
        let sigma = sigma_eval(table, u)
            .map_err(|_| Error::OutsideRadius { term: j, value: u, radius: table.radius })?;
        let pole = if offsets.pole_terms && j > 0 { 1.0 / (PI * u) } else { 0.0 };
        total += w * (sigma + pole);
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OffsetCalibration {
    pub reference: Vec<f64>,
    /// `(variant, sigma arguments, max deviation from the reference)`.
    pub entries: Vec<(OffsetVariant, Vec<f64>, f64)>,
    pub best: OffsetVariant,
    pub best_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

/// Runs every variant on `rep` and compares its sigma arguments with
/// `reference`, the role the quoted offsets play in the series.
pub fn calibrate_offsets(
    rep: &BetaExpansion,
    y: f64,
    levels: &[u32],
    reference: &[f64],
    tolerance: f64,
) -> Result<OffsetCalibration> {
    let mut entries = Vec::new();
    for v in OffsetVariant::all() {
        let seq = compute_offsets(rep, y, levels, v)?;
        let dev = if seq.sigma_args.len() == reference.len() {
            seq.sigma_args.iter().zip(reference).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        } else {
            f64::INFINITY
        };
        entries.push((v, seq.sigma_args, dev));
    }
    let (best, _, best_deviation) =
        entries.iter().min_by(|a, b| a.2.total_cmp(&b.2)).cloned().unwrap();
    Ok(OffsetCalibration {
        reference: reference.to_vec(),
        entries,
        best,
        best_deviation,
        tolerance,
        passed: best_deviation < tolerance,
    })
}
