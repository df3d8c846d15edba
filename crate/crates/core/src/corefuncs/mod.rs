//! Kernel functions, their derivatives and a few classical expansions.
//!
//! Every kernel is evaluated from the signed distance of the argument to
//! the nearest integer, which [`Phase`] provides exactly; the trigonometric
//! function only ever sees an argument in `[-pi/2, pi/2)`.

mod complex;
mod derivative;

pub use complex::{complex_cot, complex_cot_sum, complex_sec_sum, theta_series};
pub use derivative::{cot_derivative, cot_derivative_phase, cot_polynomial, MAX_COT_DERIVATIVE};

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::numeric::{CompensatedSum, Phase};
use crate::{Error, Result};

/// Factor turning `log|2 sin(pi x)|` into the circle normalisation
/// `log|1 - e^{2 pi i x}| / pi` used by [`KernelId::LogSin`].
pub const LOGSIN_CIRCLE_SCALE: f64 = 1.0 / PI;
/// Factor for the plain `log|2 sin(pi x)| = log(2 - 2 cos(2 pi x)) / 2`.
pub const LOGSIN_PLAIN_SCALE: f64 = 1.0;

/// The kernels a Birkhoff sum can be taken over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelId {
    /// `cot(pi x)`, period 1, pole at the integers.
    Cot,
    /// `csc^2(pi x)`, period 1, pole at the integers. Note `d/dx cot(pi x)
    /// = -pi csc^2(pi x)`.
    Csc2,
    /// `sec(pi x)`, period 2 (`sec(pi (x + 1)) = -sec(pi x)`), poles at
    /// half-integers.
    Sec,
    /// `log|2 sin(pi x)| / pi`, period 1, logarithmic pole at the integers.
    LogSin,
    /// `x - floor(x) - 1/2`, period 1, bounded.
    Sawtooth,
}

impl KernelId {
    pub const ALL: [KernelId; 5] =
        [KernelId::Cot, KernelId::Csc2, KernelId::Sec, KernelId::LogSin, KernelId::Sawtooth];

    pub fn name(self) -> &'static str {
        match self {
            KernelId::Cot => "cot",
            KernelId::Csc2 => "csc2",
            KernelId::Sec => "sec",
            KernelId::LogSin => "logsin",
            KernelId::Sawtooth => "sawtooth",
        }
    }

    /// Period of the kernel in `x`.
    pub fn period(self) -> f64 {
        if self == KernelId::Sec {
            2.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KernelId::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown kernel {s:?}")))
    }
}

/// Exclusion radius around the pole set.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolePolicy {
    epsilon: f64,
}

impl PolePolicy {
    pub fn new(epsilon: f64) -> Result<PolePolicy> {
        if epsilon > 0.0 && epsilon.is_finite() {
            Ok(PolePolicy { epsilon })
        } else {
            Err(Error::Domain(format!("pole radius must be positive, got {epsilon}")))
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }
}

impl Default for PolePolicy {
    fn default() -> Self {
        PolePolicy { epsilon: 1e-12 }
    }
}

pub fn eval_kernel(id: KernelId, x: f64) -> Result<f64> {
    eval_kernel_with(id, x, PolePolicy::default())
}

pub fn eval_kernel_with(id: KernelId, x: f64, policy: PolePolicy) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("kernel argument {x} is not finite")));
    }
    eval_phase(id, Phase::from_f64(x), policy).map_err(|e| match e {
        Error::Pole { kernel, .. } => Error::Pole { kernel, x },
        e => e,
    })
}

/// Kernel value at an exact phase.
#[inline]
pub fn eval_phase(id: KernelId, p: Phase, policy: PolePolicy) -> Result<f64> {
    let d = p.signed_frac();
    let eps = policy.epsilon;
    let pole = || Error::Pole { kernel: id.name(), x: p.to_f64() };
    match id {
        KernelId::Cot => {
            if d.abs() < eps {
                return Err(pole());
            }
            Ok(1.0 / (PI * d).tan())
        }
        KernelId::Csc2 => {
            if d.abs() < eps {
                return Err(pole());
            }
            let s = (PI * d).sin();
            Ok(1.0 / (s * s))
        }
        KernelId::Sec => {
            if 0.5 - d.abs() < eps {
                return Err(pole());
            }
            let c = (PI * d).cos();
            Ok(if p.nearest_parity() == 1 { -1.0 / c } else { 1.0 / c })
        }
        KernelId::LogSin => {
            if d.abs() < eps {
                return Err(pole());
            }
            Ok((2.0 * (PI * d).sin().abs()).ln() * LOGSIN_CIRCLE_SCALE)
        }
        KernelId::Sawtooth => Ok(p.frac() - 0.5),
    }
}

/// `(1/pi) [1/x + sum_{0<|k|<=K} 1/(x-k)]`, the symmetric partial sums of
/// Euler's partial fraction expansion of `cot(pi x)`.
pub fn euler_cot_partial(x: f64, k_max: u64) -> Result<f64> {
    if x.fract() == 0.0 {
        return Err(Error::Pole { kernel: "cot", x });
    }
    let mut s = CompensatedSum::new();
    for k in (1..=k_max).rev() {
        let k = k as f64;
        s.add(2.0 * x / ((x - k) * (x + k)));
    }
    s.add(1.0 / x);
    Ok(s.value() / PI)
}

/// Fejer means `2 sum_{k<=K} (1 - k/K) sin(2 pi k x)` of the formal Fourier
/// series of `cot(pi x)`.
pub fn fourier_cesaro_partial(x: f64, k_max: u64) -> f64 {
    if k_max == 0 {
        return 0.0;
    }
    let p = Phase::from_f64(x);
    let kf = k_max as f64;
    let mut s = CompensatedSum::new();
    for k in 1..k_max {
        let d = p.times(k as u128).signed_frac();
        s.add((1.0 - k as f64 / kf) * (2.0 * PI * d).sin());
    }
    2.0 * s.value()
}
