//! Direct Birkhoff sums `S_n(theta) = sum_{k=1}^n f(theta + k beta)` and the
//! graphs `x -> S_{[q x]}(y / q) / q^l` sampled in one pass.
//!
//! The worked value -0.187542 quoted for `n = 23866` is the left-limit
//! normalisation `S_{n-1} / n`; see [`crate::goldengraph::estimate_huge`].

mod graph;
mod identities;
mod rotation;

pub use graph::{birkhoff_graph, birkhoff_graph_with, GraphSamples, Parity, MAX_GRAPH_LEVEL};
pub use identities::{identity_suite, renorm_apply, Identity, IdentityEntry, IdentityReport, FIXED_POINT_PAIRS};
pub use rotation::{Orbit, RotationSpec};
pub(crate) use identities::reduced_point;

use crate::corefuncs::{eval_phase, KernelId, PolePolicy};
use crate::numeric::{CompensatedSum, Phase};
use crate::{Error, Result};

/// Upper bound on the number of terms a direct sum will attempt.
pub const MAX_DIRECT_TERMS: u64 = 1 << 32;

/// `sum_{k=1}^n kernel(theta + k rot)`, compensated.
pub fn birkhoff_sum(kernel: KernelId, rot: &RotationSpec, theta: f64, n: u64) -> Result<f64> {
    birkhoff_sum_with(kernel, rot, theta, n, PolePolicy::default())
}

pub fn birkhoff_sum_with(
    kernel: KernelId,
    rot: &RotationSpec,
    theta: f64,
    n: u64,
    policy: PolePolicy,
) -> Result<f64> {
    let orbit = rot.orbit(theta)?;
    orbit_sum(&orbit, 1, n, |p| eval_phase(kernel, p, policy), kernel.name())
}

/// Compensated sum of `f` over the orbit points `first..=last`.
pub fn orbit_sum(
    orbit: &Orbit,
    first: u64,
    last: u64,
    f: impl Fn(Phase) -> Result<f64>,
    name: &'static str,
) -> Result<f64> {
    if last >= first && last - first >= MAX_DIRECT_TERMS {
        return Err(Error::CountOverflow(last - first + 1));
    }
    let mut acc = CompensatedSum::new();
    for k in first..=last {
        acc.add(point(orbit, k, &f, name)?);
    }
    Ok(acc.value())
}

/// Sums over orbit points `1..=c` for every count `c` (any order), in one pass.
pub fn prefix_sums(
    kernel: KernelId,
    orbit: &Orbit,
    counts: &[u64],
    policy: PolePolicy,
) -> Result<Vec<f64>> {
    let mut order: Vec<usize> = (0..counts.len()).collect();
    order.sort_by_key(|&i| counts[i]);
    if let Some(&i) = order.last() {
        if counts[i] > MAX_DIRECT_TERMS {
            return Err(Error::CountOverflow(counts[i]));
        }
    }
    let f = |p| eval_phase(kernel, p, policy);
    let mut out = vec![0.0; counts.len()];
    let mut acc = CompensatedSum::new();
    let mut k = 0u64;
    for i in order {
        while k < counts[i] {
            k += 1;
            acc.add(point(orbit, k, &f, kernel.name())?);
        }
        out[i] = acc.value();
    }
    Ok(out)
}

#[inline]
pub(crate) fn point(
    orbit: &Orbit,
    k: u64,
    f: &impl Fn(Phase) -> Result<f64>,
    name: &'static str,
) -> Result<f64> {
    let p = orbit.phase(k);
    f(p).map_err(|e| match e {
        Error::Pole { x, .. } => Error::OrbitPole { kernel: name, index: k, x },
        e => e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corefuncs::eval_kernel;

    #[test]
    fn single_golden_term() {
        let s = birkhoff_sum(KernelId::Cot, &RotationSpec::Golden, 0.0, 1).unwrap();
        assert!((s - eval_kernel(KernelId::Cot, crate::fibarith::ALPHA).unwrap()).abs() < 1e-15);
        assert!((s + 0.388_800_733_560_206).abs() < 1e-14);
    }

    #[test]
    fn rational_cancellation() {
        let r = RotationSpec::rational(1, 2).unwrap();
        let s = birkhoff_sum(KernelId::Cot, &r, 0.25, 2).unwrap();
        assert!(s.abs() < 1e-15);
    }

    #[test]
    fn rational_pole_names_the_term() {
        let r = RotationSpec::rational(2, 5).unwrap();
        match birkhoff_sum(KernelId::Cot, &r, 0.0, 7) {
            Err(Error::OrbitPole { index, .. }) => assert_eq!(index, 5),
            other => panic!("expected a pole, got {other:?}"),
        }
    }

    #[test]
    fn worked_example_left_limit() {
        let s = birkhoff_sum(KernelId::Cot, &RotationSpec::Golden, 0.0, 23865).unwrap();
        assert!((s / 23866.0 + 0.187542).abs() < 1e-4, "{}", s / 23866.0);
    }

    #[test]
    fn order_independence() {
        let o = RotationSpec::Golden.orbit(0.0).unwrap();
        let f = |p| eval_phase(KernelId::Cot, p, PolePolicy::default());
        let fwd = orbit_sum(&o, 1, 1_000_000, f, "cot").unwrap();
        let mut acc = CompensatedSum::new();
        for k in (1..=1_000_000).rev() {
            acc.add(f(o.phase(k)).unwrap());
        }
        assert!((fwd - acc.value()).abs() <= 1e-8 * fwd.abs().max(1.0));
    }

    #[test]
    fn too_many_terms() {
        assert!(matches!(
            birkhoff_sum(KernelId::Cot, &RotationSpec::Golden, 0.0, MAX_DIRECT_TERMS + 5),
            Err(Error::CountOverflow(_))
        ));
    }
}
