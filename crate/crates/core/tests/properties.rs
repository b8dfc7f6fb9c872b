mod common;

use proptest::prelude::*;

use common::*;
use sumset_core::bounds::{audit, bound_value, BoundId, BoundStatus};
use sumset_core::bounds::SetFamily;
use sumset_core::explorer::{ScanConfig, ScanMode};
use sumset_core::inverse::{classify_extremal, Classification};
use sumset_core::kernel::{sumset_with_stats, Engine};
use sumset_core::witness::{gen_family, ExtremalFamily};
use sumset_core::{dilate, SumsetKind};

fn arb_family() -> impl Strategy<Value = ExtremalFamily> {
    prop_oneof![
        (2usize..7, 1i64..6).prop_map(|(k, d)| ExtremalFamily::OddAp { k, d }),
        (3usize..7, 1i64..6).prop_map(|(k, d)| ExtremalFamily::Interval1K { k, d }),
        (2usize..7, 1i64..6).prop_map(|(k, d)| ExtremalFamily::Interval0K { k, d }),
        (1i64..6).prop_map(|d| ExtremalFamily::Special0124 { d }),
        (1i64..9, 1i64..9).prop_map(|(a, b)| ExtremalFamily::SumClosed3 { a0: a, a1: a + b }),
        (1i64..9, 1i64..9).prop_map(|(a, b)| ExtremalFamily::SumClosed4 { a1: a, a2: a + b }),
    ]
}

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn engines_agree(a in arb_set(6, -25, 25)) {
        prop_assert_eq!(check_oracle(&a), Ok(()));
    }

    #[test]
    fn engines_agree_on_positive_sets(a in arb_positive(7, 30)) {
        prop_assert_eq!(check_oracle(&a), Ok(()));
    }

    #[test]
    fn engines_agree_on_zero_sets(a in arb_zero(7, 30)) {
        prop_assert_eq!(check_oracle(&a), Ok(()));
    }

    #[test]
    fn signed_kinds_are_symmetric(a in arb_set(7, -40, 40), h in 1usize..8) {
        prop_assume!(h <= a.len());
        prop_assert_eq!(check_symmetry(&a, h), Ok(()));
    }

    #[test]
    fn dilation_is_equivariant(a in arb_set(6, -20, 20), h in 1usize..7, alpha in -6i64..=6) {
        prop_assume!(h <= a.len() && alpha != 0);
        prop_assert_eq!(check_dilation(&a, h, alpha), Ok(()));
    }

    #[test]
    fn inclusion_chain(a in arb_set(7, -30, 30), h in 1usize..8) {
        prop_assume!(h <= a.len());
        prop_assert_eq!(check_inclusions(&a, h), Ok(()));
    }

    #[test]
    fn values_stay_in_range(a in arb_set(7, -30, 30), h in 1usize..8) {
        prop_assume!(h <= a.len());
        prop_assert_eq!(check_range(&a, h), Ok(()));
    }

    #[test]
    fn stats_describe_the_result(a in arb_set(5, -20, 20), h in 1usize..6) {
        prop_assume!(h <= a.len());
        for engine in [Engine::Naive, Engine::Layered] {
            let (r, s) = sumset_with_stats(&a, h, SumsetKind::RestrictedSigned, engine).unwrap();
            prop_assert_eq!(s.distinct_values, r.cardinality());
            let (lo, hi) = s.value_range.unwrap();
            prop_assert!(r.values.iter().all(|&v| lo <= v && v <= hi));
        }
    }

    #[test]
    fn witnesses_are_sound_for_positive_sets(a in arb_positive(7, 60)) {
        prop_assert_eq!(check_witnesses(&a), Ok(()));
    }

    #[test]
    fn witnesses_are_sound_for_zero_sets(a in arb_zero(7, 60)) {
        prop_assert_eq!(check_witnesses(&a), Ok(()));
    }

    #[test]
    fn direct_theorem_bounds_hold(a in prop_oneof![arb_positive(6, 40), arb_zero(6, 40)], h in 1usize..7) {
        prop_assume!(h <= a.len());
        let report = audit(&a, h).unwrap();
        prop_assert!(report.bounds.iter().all(|b| b.status != BoundStatus::Violation));
        let family = if a.elements()[0] == 0 { BoundId::T3_1 } else { BoundId::T2_1 };
        prop_assert!(report.cardinality as i64 >= bound_value(family, a.len(), h).unwrap());
    }

    #[test]
    fn family_members_regenerate_and_classify(f in arb_family(), scale in 1i64..5) {
        let a = gen_family(&f).unwrap();
        let h = match f {
            ExtremalFamily::OddAp { .. } => 2,
            ExtremalFamily::Special0124 { .. } => 3,
            _ => a.len(),
        };
        let Classification::Covered(c) = classify_extremal(&a, h).unwrap() else {
            return Err(TestCaseError::fail("family member not covered"));
        };
        prop_assert!(c.equality && c.consistent);
        let matched = c.matched_family.unwrap();
        prop_assert_eq!(gen_family(&matched).unwrap().to_string(), a.to_string());

        let scaled = dilate(&a, scale).unwrap();
        let Classification::Covered(cs) = classify_extremal(&scaled, h).unwrap() else {
            return Err(TestCaseError::fail("scaled member not covered"));
        };
        prop_assert_eq!(cs.matched_family, Some(matched.scaled(scale)));
        prop_assert_eq!(cs.cardinality, c.cardinality);
    }

    #[test]
    fn classification_is_dilation_invariant(a in prop_oneof![arb_positive(5, 12), arb_zero(5, 12)], h in 2usize..6, d in 2i64..5) {
        prop_assume!(h <= a.len());
        let scaled = dilate(&a, d).unwrap();
        match (classify_extremal(&a, h).unwrap(), classify_extremal(&scaled, h).unwrap()) {
            (Classification::Covered(x), Classification::Covered(y)) => {
                prop_assert_eq!(x.equality, y.equality);
                prop_assert_eq!(x.matched_family.map(|f| f.scaled(d)), y.matched_family);
            }
            (Classification::NotCovered { .. }, Classification::NotCovered { .. }) => {}
            _ => return Err(TestCaseError::fail("coverage differs under dilation")),
        }
    }
}

#[test]
fn scans_are_deterministic_across_worker_counts() {
    let cases = [
        ("verify:T2_1", 4, SetFamily::Positive, 12),
        ("verify:T3_1", 5, SetFamily::ContainsZero, 11),
        ("conj:C2_2", 5, SetFamily::Positive, 11),
        ("conj:C3_2", 5, SetFamily::ContainsZero, 9),
    ];
    for (mode, k, family, max) in cases {
        let mode: ScanMode = mode.parse().unwrap();
        let config = ScanConfig::all_folds(k, family, max, mode).unwrap();
        assert_eq!(check_scan_determinism(&config), Ok(()));
    }
}
