use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{fibonacci, Natural};

/// Indices of the Fibonacci numbers in the greedy decomposition of `n`,
/// strictly decreasing, each at least 2 and never adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ZeckendorfRep {
    pub indices: Vec<u32>,
}

impl ZeckendorfRep {
    /// Sum of the selected Fibonacci numbers.
    pub fn value(&self) -> Natural {
        Natural(self.indices.iter().map(|&i| fibonacci(i).0).sum())
    }

    pub fn is_valid(&self) -> bool {
        self.indices.iter().all(|&i| i >= 2)
            && self.indices.windows(2).all(|w| w[0] >= w[1] + 2)
    }
}

pub fn zeckendorf(n: &Natural) -> ZeckendorfRep {
    if n.is_zero() {
        return ZeckendorfRep::default();
    }
    // fibs[i] = F_{i+2}
    let mut fibs = vec![BigUint::one(), BigUint::from(2u32)];
    while fibs.last().unwrap() <= &n.0 {
        let k = fibs.len();
        let next = &fibs[k - 1] + &fibs[k - 2];
        fibs.push(next);
    }
    let mut rest = n.0.clone();
    let mut indices = Vec::new();
    for i in (0..fibs.len()).rev() {
        if rest.is_zero() {
            break;
        }
        if fibs[i] <= rest {
            rest -= &fibs[i];
            indices.push(i as u32 + 2);
        }
    }
    ZeckendorfRep { indices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn exhaustive(n: u64) -> Vec<Vec<u32>> {
        // all non-adjacent subsets of F_2..F_12 summing to n
        let f: Vec<u64> = (2..=12).map(|i| super::super::fibonacci_u64(i).unwrap()).collect();
        let mut out = Vec::new();
        for mask in 0u32..(1 << f.len()) {
            if mask & (mask >> 1) != 0 {
                continue;
            }
            let s: u64 = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).sum();
            if s == n {
                out.push((0..f.len() as u32).rev().filter(|i| mask >> i & 1 == 1).map(|i| i + 2).collect());
            }
        }
        out
    }

    #[test]
    fn worked_example() {
        assert_eq!(zeckendorf(&Natural::from(23866)).indices, vec![22, 19, 17, 14]);
        assert_eq!(zeckendorf(&Natural::from(1)).indices, vec![2]);
        assert!(zeckendorf(&Natural::from(0)).indices.is_empty());
    }

    #[test]
    fn matches_exhaustive_search() {
        assert_eq!(exhaustive(16), vec![vec![7, 4]]);
        assert_eq!(zeckendorf(&Natural::from(16)).indices, vec![7, 4]);
        for n in 1..200 {
            let all = exhaustive(n);
            assert_eq!(all.len(), 1, "uniqueness fails at {n}");
            assert_eq!(zeckendorf(&Natural::from(n)).indices, all[0]);
        }
    }

    #[test]
    fn json_is_an_array() {
        let z = zeckendorf(&Natural::from(23866));
        assert_eq!(serde_json::to_string(&z).unwrap(), "[22,19,17,14]");
    }

    proptest! {
        #[test]
        fn reconstructs(n in 1u64..=1_000_000) {
            let z = zeckendorf(&Natural::from(n));
            prop_assert!(z.is_valid());
            prop_assert_eq!(z.value(), Natural::from(n));
        }
    }
}
