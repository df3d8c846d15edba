use std::f64::consts::PI;
use std::sync::OnceLock;

use super::PolePolicy;
use crate::numeric::Phase;
use crate::{Error, Result};

/// Highest derivative order kept in the table.
pub const MAX_COT_DERIVATIVE: usize = 12;

/// Coefficients (ascending powers of `c`) of the polynomials with
/// `d^l/dx^l cot(pi x) = pi^l P_l(cot(pi x))`, from `P_{l+1} = -(1 + c^2) P_l'`.
fn table() -> &'static [Vec<i128>] {
    static TABLE: OnceLock<Vec<Vec<i128>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![vec![0, 1]];
        for l in 0..MAX_COT_DERIVATIVE {
            let p = &t[l];
            let dp: Vec<i128> = (1..p.len()).map(|i| i as i128 * p[i]).collect();
            let mut next = vec![0i128; dp.len() + 2];
            for (i, &c) in dp.iter().enumerate() {
                next[i] -= c;
                next[i + 2] -= c;
            }
            while next.last() == Some(&0) {
                next.pop();
            }
            t.push(next);
        }
        t
    })
}

/// Integer coefficients of `P_l`, ascending.
pub fn cot_polynomial(l: usize) -> Result<&'static [i128]> {
    table()
        .get(l)
        .map(Vec::as_slice)
        .ok_or(Error::OrderTooLarge { order: l, max: MAX_COT_DERIVATIVE })
}

/// `d^l/dx^l cot(pi x)`.
pub fn cot_derivative(l: usize, x: f64) -> Result<f64> {
    cot_derivative_phase(l, Phase::from_f64(x), PolePolicy::default()).map_err(|e| match e {
        Error::Pole { kernel, .. } => Error::Pole { kernel, x },
        e => e,
    })
}

/// `d^l/dx^l cot(pi x)` at an exact phase.
#[inline]
pub fn cot_derivative_phase(l: usize, p: Phase, policy: PolePolicy) -> Result<f64> {
    let coeffs = cot_polynomial(l)?;
    let d = p.signed_frac();
    if d.abs() < policy.epsilon() {
        return Err(Error::Pole { kernel: "cot", x: p.to_f64() });
    }
    let c = 1.0 / (PI * d).tan();
    let v = coeffs.iter().rev().fold(0.0, |acc, &a| acc * c + a as f64);
    Ok(v * PI.powi(l as i32))
}
