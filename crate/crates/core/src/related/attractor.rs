use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::birkhoff::{birkhoff_graph, GraphSamples, RotationSpec};
use crate::corefuncs::KernelId;
use crate::fibarith::fibonacci_u64;
use crate::numeric::{sup_distance, Phase};
use crate::{Error, Result};

const PERIOD: u32 = 6;
const MAX_SHIFT: u32 = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttractorFamily {
    pub period: u32,
    /// Deepest graph of each residue class `n mod period`.
    pub branches: BTreeMap<u32, GraphSamples>,
    /// Smallest sup distance between two branches.
    pub separation: f64,
    /// Sup distance between the last two graphs of each class.
    pub contraction: BTreeMap<u32, f64>,
    /// `max_n sup |g_n - g_{n+k}|` for `k = 1..=8`.
    pub shift_distances: Vec<f64>,
    /// Whether `g_n` is closer to `g_{n+6}` than to `g_{n+k}`, `k < 6`, for every `n`.
    pub periodic: bool,
    /// Closest approach of the orbit to a pole of `sec`, per level.
    pub pole_distance: BTreeMap<u32, f64>,
    /// For each level, the sup distance from the `-tan` graph to its nearest branch.
    pub tan_distance: BTreeMap<u32, f64>,
}

impl AttractorFamily {
    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("family serialises");
        let obj = v.as_object_mut().unwrap();
        obj.insert("schema_version".into(), crate::SCHEMA_VERSION.into());
        obj.insert("kind".into(), "attractor".into());
        v
    }
}

fn nearest_pole(level: u32) -> f64 {
    let q = fibonacci_u64(level).unwrap();
    (1..=q)
        .map(|k| (Phase::GOLDEN.times(k as u128) + Phase::HALF).signed_frac().abs())
        .fold(f64::INFINITY, f64::min)
}

/// Graphs `(1/q_n) sum_{k <= [x q_n]} sec(pi k alpha)` for each level,
/// grouped by `n mod 6`.
pub fn sec_attractor(levels: std::ops::RangeInclusive<u32>, grid: usize) -> Result<AttractorFamily> {
    let levels: Vec<u32> = levels.collect();
    if levels.len() < 2 * PERIOD as usize {
        return Err(Error::Domain(format!("need at least {} levels", 2 * PERIOD)));
    }
    let golden = RotationSpec::Golden;
    let mut graphs = BTreeMap::new();
    let mut tan = BTreeMap::new();
    let mut pole_distance = BTreeMap::new();
    for &n in &levels {
        graphs.insert(n, birkhoff_graph(KernelId::Sec, &golden, 0.0, n, grid, 1)?);
        // cot(pi (x + 1/2)) = -tan(pi x): start the cot orbit at 1/2
        let q = fibonacci_u64(n).unwrap() as f64;
        tan.insert(n, birkhoff_graph(KernelId::Cot, &golden, q / 2.0, n, grid, 1)?);
        pole_distance.insert(n, nearest_pole(n));
    }
    let last = *levels.last().unwrap();
    let mut branches = BTreeMap::new();
    let mut contraction = BTreeMap::new();
    for r in 0..PERIOD {
        let class: Vec<u32> = levels.iter().copied().filter(|n| n % PERIOD == r).collect();
        let (a, b) = (class[class.len() - 2], class[class.len() - 1]);
        contraction.insert(r, sup_distance(&graphs[&a].values, &graphs[&b].values));
        branches.insert(r, graphs[&b].clone());
    }
    let mut separation = f64::INFINITY;
    for i in 0..PERIOD {
        for j in i + 1..PERIOD {
            separation = separation.min(sup_distance(&branches[&i].values, &branches[&j].values));
        }
    }
    let mut shift_distances = vec![0.0f64; MAX_SHIFT as usize];
    let mut periodic = true;
    for &n in &levels {
        let mut d = [f64::NAN; MAX_SHIFT as usize + 1];
        for k in 1..=MAX_SHIFT {
            if n + k <= last {
                d[k as usize] = sup_distance(&graphs[&n].values, &graphs[&(n + k)].values);
                shift_distances[k as usize - 1] = shift_distances[k as usize - 1].max(d[k as usize]);
            }
        }
        if n + PERIOD <= last {
            periodic &= (1..PERIOD as usize).all(|k| d[PERIOD as usize] < d[k]);
        }
    }
    let tan_distance = tan
        .iter()
        .map(|(&n, g)| {
            let best = branches.values().map(|b| sup_distance(&g.values, &b.values)).fold(f64::INFINITY, f64::min);
            (n, best)
        })
        .collect();
    Ok(AttractorFamily {
        period: PERIOD,
        branches,
        separation,
        contraction,
        shift_distances,
        periodic,
        pole_distance,
        tan_distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_separated_branches() {
        let f = sec_attractor(12..=29, 100).unwrap();
        assert_eq!(f.branches.len(), 6);
        let worst = f.contraction.values().fold(0.0f64, |m, v| m.max(*v));
        assert!(f.separation > 10.0 * worst, "{} vs {worst}", f.separation);
        assert!(f.periodic);
        assert!(f.pole_distance.values().all(|d| *d > 1e-9));
    }

    #[test]
    fn one_point_grid() {
        let f = sec_attractor(12..=23, 1).unwrap();
        assert_eq!(f.branches[&0].xs.len(), 2);
        assert!(sec_attractor(12..=20, 10).is_err());
    }
}
