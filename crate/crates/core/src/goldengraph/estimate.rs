use std::f64::consts::PI;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::offsets::block_offsets;
use super::{fib_ratio, parity_sign};
use crate::birkhoff::{birkhoff_sum, RotationSpec};
use crate::corefuncs::KernelId;
use crate::fibarith::{fibonacci, zeckendorf, Natural, ALPHA};
use crate::numeric::{CompensatedSum, Fixed};
use crate::tau_sigma::{sigma_eval, SigmaTable};
use crate::{Error, Result, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EstimateConfig {
    /// Longest Zeckendorf representation accepted.
    pub max_terms: usize,
    /// Direct sums are attached as an oracle up to this `n`.
    pub oracle_limit: u64,
}

impl Default for EstimateConfig {
    fn default() -> Self {
        EstimateConfig { max_terms: 512, oracle_limit: 10_000_000 }
    }
}

/// `S_{n-1}(0) / n` for the golden cot sum, from the block structure of `n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HugeEstimate {
    pub n: Natural,
    /// Smallest even `L` with `F_L >= n`.
    pub level: u32,
    /// `n / F_L`.
    pub x: f64,
    /// `L - z` for each Zeckendorf index `z` of `n`, increasing.
    pub exponents: Vec<u32>,
    /// Sigma arguments of the blocks at level `L`.
    pub offsets: Vec<f64>,
    /// Per-block contributions, already divided by `x`; they sum to `estimate`.
    pub terms: Vec<f64>,
    /// Share of each term coming from the block's first point.
    pub pole_terms: Vec<f64>,
    pub estimate: f64,
    pub oracle: Option<f64>,
    /// `alpha^{last exponent}`.
    pub truncation_indicator: f64,
    /// `x - sum alpha^{e_j}`.
    pub expansion_gap: f64,
    /// Sigma table error summed over the blocks.
    pub error_bound: f64,
    pub order: usize,
}

impl HugeEstimate {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("estimate serialises");
        let obj = v.as_object_mut().unwrap();
        obj.insert("schema_version".into(), SCHEMA_VERSION.into());
        obj.insert("kind".into(), "estimate".into());
        v
    }
}

pub fn estimate_huge(n: &Natural, table: &SigmaTable) -> Result<HugeEstimate> {
    estimate_huge_with(n, table, EstimateConfig::default())
}

fn even_level(n: &Natural) -> u32 {
    let mut l = 2;
    while fibonacci(l).0 < n.0 {
        l += 2;
    }
    l
}

pub fn estimate_huge_with(n: &Natural, table: &SigmaTable, cfg: EstimateConfig) -> Result<HugeEstimate> {
    if n.is_zero() {
        return Ok(HugeEstimate {
            n: n.clone(),
            level: 0,
            x: 0.0,
            exponents: vec![],
            offsets: vec![],
            terms: vec![],
            pole_terms: vec![],
            estimate: 0.0,
            oracle: Some(0.0),
            truncation_indicator: 0.0,
            expansion_gap: 0.0,
            error_bound: 0.0,
            order: table.order,
        });
    }
    let zeck = zeckendorf(n);
    if zeck.indices.len() > cfg.max_terms {
        return Err(Error::Domain(format!(
            "Zeckendorf length {} exceeds {}",
            zeck.indices.len(),
            cfg.max_terms
        )));
    }
    let level = even_level(n);
    let q = fibonacci(level);
    let x = Fixed::from_ratio(&BigInt::from(n.0.clone()), &BigInt::from(q.0), 80).to_f64();
    let exponents: Vec<u32> = zeck.indices.iter().map(|z| level - z).collect();
    let blocks = block_offsets(&exponents, 0.0, level)?;

    let mut terms = Vec::new();
    let mut poles = Vec::new();
    let mut offsets = Vec::new();
    let mut bound = 0.0;
    let mut gap = 0.0;
    for (b, (&e, &(_, own, u))) in exponents.iter().zip(&blocks).enumerate() {
        let m = level - e;
        let weight = fib_ratio(m, level);
        let sign = parity_sign(m);
        let sigma = sigma_eval(table, u)
            .map_err(|_| Error::OutsideRadius { term: b, value: u, radius: table.radius })?;
        let pole = if b > 0 {
            let qm = fibonacci(m).to_f64();
            (PI * own / qm).tan().recip() / qm
        } else {
            0.0
        };
        terms.push(weight * (sign * sigma + pole) / x);
        poles.push(weight * pole / x);
        offsets.push(u);
        bound += weight * table.truncation_bound(u) / x;
        let big = ALPHA.powi(2 * level as i32);
        gap += ALPHA.powi(e as i32) * (big - sign * ALPHA.powi(2 * m as i32)) / (1.0 - big);
    }
    let estimate: f64 = terms.iter().copied().collect::<CompensatedSum>().value();
    let oracle = match n.to_u64() {
        Some(k) if k <= cfg.oracle_limit => {
            Some(birkhoff_sum(KernelId::Cot, &RotationSpec::Golden, 0.0, k - 1)? / k as f64)
        }
        _ => None,
    };
    Ok(HugeEstimate {
        n: n.clone(),
        level,
        x,
        truncation_indicator: ALPHA.powi(*exponents.last().unwrap() as i32),
        exponents,
        offsets,
        terms,
        pole_terms: poles,
        estimate,
        oracle,
        expansion_gap: gap,
        error_bound: bound,
        order: table.order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tau_sigma::sigma_taylor;
    use std::sync::OnceLock;

    fn table() -> &'static SigmaTable {
        static T: OnceLock<SigmaTable> = OnceLock::new();
        T.get_or_init(|| sigma_taylor(8, &[20, 22, 24, 26, 28, 30]).unwrap())
    }

    fn nat(s: &str) -> Natural {
        s.parse().unwrap()
    }

    #[test]
    fn worked_example() {
        let est = estimate_huge(&nat("23866"), table()).unwrap();
        assert_eq!(est.level, 24);
        assert_eq!(est.exponents, vec![2, 5, 7, 10]);
        assert!((est.x - 23866.0 / 46368.0).abs() < 1e-16);
        let oracle = est.oracle.unwrap();
        assert!((oracle + 0.187542).abs() < 5e-4);
        assert!((est.estimate - oracle).abs() < 1e-3, "{} vs {oracle}", est.estimate);
        let sum: f64 = [2, 5, 7, 10].iter().map(|&e| ALPHA.powi(e)).sum();
        assert!((est.expansion_gap - (est.x - sum)).abs() < 1e-14);
        assert!((est.expansion_gap + 7.9e-9).abs() < 1e-10);
    }

    #[test]
    fn fibonacci_n_is_one_block() {
        let est = estimate_huge(&nat("46368"), table()).unwrap();
        assert_eq!(est.exponents, vec![0]);
        assert_eq!(est.x, 1.0);
        assert!((est.estimate - est.oracle.unwrap()).abs() < 1e-6);
    }

    #[test]
    fn zero_and_small() {
        let z = estimate_huge(&nat("0"), table()).unwrap();
        assert_eq!(z.estimate, 0.0);
        let one = estimate_huge(&nat("1"), table()).unwrap();
        assert_eq!(one.oracle, Some(0.0));
    }

    #[test]
    fn googol_is_fast_and_deterministic() {
        let n = nat(&format!("1{}", "0".repeat(100)));
        let a = estimate_huge(&n, table()).unwrap();
        let b = estimate_huge(&n, table()).unwrap();
        assert_eq!(a, b);
        assert!(a.oracle.is_none());
        assert!(a.estimate.is_finite() && a.error_bound < 1e-6);
    }

    #[test]
    fn rejects_long_representations() {
        let cfg = EstimateConfig { max_terms: 3, ..Default::default() };
        assert!(estimate_huge_with(&nat("23866"), table(), cfg).is_err());
    }

    #[test]
    fn higher_order_refines_within_bound() {
        let t4 = sigma_taylor(4, &[20, 22, 24, 26, 28, 30]).unwrap();
        let low = estimate_huge(&nat("23866"), &t4).unwrap();
        let high = estimate_huge(&nat("23866"), table()).unwrap();
        assert!((high.estimate - low.estimate).abs() < low.error_bound, "{} vs {}", high.estimate, low.estimate);
        assert_eq!(low.exponents, high.exponents);
    }
}
