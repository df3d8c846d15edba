use golden_birkhoff::birkhoff::{birkhoff_graph, birkhoff_sum, GraphSamples, RotationSpec};
use golden_birkhoff::corefuncs::KernelId;
use golden_birkhoff::fibarith::{beta_expand, beta_value, zeckendorf, Natural, ZeckendorfRep};
use golden_birkhoff::goldengraph::{estimate_huge, HugeEstimate};
use golden_birkhoff::tau_sigma::{sigma_taylor, SigmaTable};
use proptest::prelude::*;
use std::sync::OnceLock;

fn table() -> &'static SigmaTable {
    static T: OnceLock<SigmaTable> = OnceLock::new();
    T.get_or_init(|| sigma_taylor(6, &[20, 22, 24, 26, 28]).unwrap())
}

#[test]
fn graph_json_round_trip() {
    let g = birkhoff_graph(KernelId::Cot, &RotationSpec::Golden, 0.0, 12, 10, 1).unwrap();
    let text = serde_json::to_string(&g).unwrap();
    let back: GraphSamples = serde_json::from_str(&text).unwrap();
    assert_eq!(g, back);
}

#[test]
fn estimate_json_round_trip() {
    let est = estimate_huge(&"123456789012345678901234567890".parse().unwrap(), table()).unwrap();
    let v = est.to_json();
    assert_eq!(v["kind"], "estimate");
    assert_eq!(v["n"], "123456789012345678901234567890");
    let back: HugeEstimate = serde_json::from_value(v).unwrap();
    assert_eq!(back, est);
}

#[test]
fn table_json_round_trip() {
    let t = table();
    let back: SigmaTable = serde_json::from_value(t.to_json()).unwrap();
    assert_eq!(&back, t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn estimate_tracks_direct_sum(n in 30u64..100_000) {
        let est = estimate_huge(&Natural::new(n), table()).unwrap();
        let oracle = est.oracle.unwrap();
        let direct = birkhoff_sum(KernelId::Cot, &RotationSpec::Golden, 0.0, n - 1).unwrap() / n as f64;
        prop_assert_eq!(oracle, direct);
        prop_assert!((est.estimate - oracle).abs() < 2e-3, "{} vs {}", est.estimate, oracle);
    }

    #[test]
    fn zeckendorf_of_decimal_strings(digits in "[1-9][0-9]{0,80}") {
        let n: Natural = digits.parse().unwrap();
        let z = zeckendorf(&n);
        prop_assert!(z.is_valid());
        prop_assert_eq!(z.value().to_string(), digits);
        let json = serde_json::to_string(&z).unwrap();
        let back: ZeckendorfRep = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, z);
    }

    #[test]
    fn beta_digits_are_canonical(x in 0.0f64..1.0, depth in 1u32..60) {
        let rep = beta_expand(x, depth).unwrap();
        prop_assert!(rep.is_canonical());
        let v = beta_value(&rep);
        prop_assert!(v <= x + 1e-15 && x - v <= golden_birkhoff::fibarith::ALPHA.powi(depth as i32) + 1e-15);
    }
}
