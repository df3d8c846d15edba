use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::corefuncs::{complex_cot_sum, complex_sec_sum, theta_series};
use crate::Result;

/// One way of reading the cot form of `theta^2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularReading {
    pub name: String,
    pub formula: String,
    pub value: [f64; 2],
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularReport {
    pub tau: [f64; 2],
    pub terms: u32,
    pub theta_squared: [f64; 2],
    pub readings: Vec<ModularReading>,
    pub best: String,
    /// `|R(tau + 2) - R(tau)|` for the best reading.
    pub periodicity_residual: f64,
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn readings(tau: Complex64, k: u32) -> Result<Vec<(String, String, Complex64)>> {
    let half = tau / 2.0;
    Ok(vec![
        (
            "half-argument-quarter-shift".into(),
            "1 + sum [cot(pi(k tau/2 + 1/4)) - cot(pi(k tau/2 - 1/4))]".into(),
            1.0 + complex_cot_sum(half, 0.25, k)? - complex_cot_sum(half, -0.25, k)?,
        ),
        (
            "secant".into(),
            "1 + 2 sum sec(pi k tau)".into(),
            1.0 + 2.0 * complex_sec_sum(tau, k)?,
        ),
        (
            "full-argument-quarter-shift".into(),
            "1 + 2 sum [cot(pi(k tau + 1/4)) - cot(pi(k tau - 1/4))]".into(),
            1.0 + 2.0 * (complex_cot_sum(tau, 0.25, k)? - complex_cot_sum(tau, -0.25, k)?),
        ),
        (
            "half-shift".into(),
            "1 + 2 sum [cot(pi k tau) + cot(pi(k tau + 1/2))]".into(),
            1.0 + 2.0 * (complex_cot_sum(tau, 0.0, k)? + complex_cot_sum(tau, 0.5, k)?),
        ),
    ])
}

/// Compares `theta(tau)^2` with each reading, all truncated at `k` terms.
pub fn modular_check(tau: Complex64, k: u32) -> Result<ModularReport> {
    let theta = theta_series(tau, k)?;
    let target = theta * theta;
    let forms = readings(tau, k)?;
    let shifted = readings(tau + 2.0, k)?;
    let out: Vec<ModularReading> = forms
        .iter()
        .map(|(name, formula, v)| ModularReading {
            name: name.clone(),
            formula: formula.clone(),
            value: pair(*v),
            residual: (v - target).norm(),
        })
        .collect();
    let best = (0..out.len()).min_by(|&a, &b| out[a].residual.total_cmp(&out[b].residual)).unwrap();
    let periodicity_residual = (shifted[best].2 - forms[best].2).norm();
    let name = out[best].name.clone();
    Ok(ModularReport {
        tau: pair(tau),
        terms: k,
        theta_squared: pair(target),
        readings: out,
        best: name,
        periodicity_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn at_i() {
        let r = modular_check(Complex64::i(), 40).unwrap();
        assert!((r.theta_squared[0] - 1.180_340).abs() < 1e-6);
        assert_eq!(r.best, "half-argument-quarter-shift");
        assert!(r.readings[0].residual < 1e-12);
        assert!(r.readings[1].residual < 1e-12);
        // the full-argument form is 2 theta(2 tau)^2 - 1
        let t2 = theta_series(Complex64::i() * 2.0, 40).unwrap();
        let v = r.readings[2].value;
        assert!((Complex64::new(v[0], v[1]) - (2.0 * t2 * t2 - 1.0)).norm() < 1e-12);
        assert!(r.readings[3].residual > 1.0);
    }

    #[test]
    fn periodic_in_two() {
        let r = modular_check(Complex64::new(1.0, 1.0), 60).unwrap();
        assert!(r.periodicity_residual < 1e-8);
    }

    #[test]
    fn zero_terms() {
        let r = modular_check(Complex64::i(), 0).unwrap();
        assert!(r.readings.iter().take(3).all(|x| x.value == [1.0, 0.0]));
        assert!(modular_check(Complex64::new(0.0, -1.0), 5).is_err());
    }
}
