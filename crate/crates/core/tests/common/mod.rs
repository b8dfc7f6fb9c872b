#![allow(dead_code)]

use std::collections::BTreeSet;

use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, FileFailurePersistence, RngSeed, TestRunner};

use sumset_core::explorer::{scan, ScanConfig};
use sumset_core::kernel::{sumset_layered, sumset_naive};
use sumset_core::witness::{certified_count, s_family, t_family, u_family, TVariant};
use sumset_core::{dilate, FiniteIntSet, SumsetKind};

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

/// The seed for every randomized check; override with `SUMSET_SEED`.
pub fn seed() -> u64 {
    std::env::var("SUMSET_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: Some(Box::new(FileFailurePersistence::Off)),
        ..Config::default()
    }
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(config(cases))
}

/// Draws one value from `strategy`.
pub fn draw<S: Strategy>(runner: &mut TestRunner, strategy: &S) -> S::Value {
    strategy.new_tree(runner).expect("strategy produces a value").current()
}

fn to_set(values: BTreeSet<i64>) -> FiniteIntSet {
    FiniteIntSet::new(&values.into_iter().collect::<Vec<_>>()).unwrap()
}

pub fn arb_set(max_k: usize, lo: i64, hi: i64) -> impl Strategy<Value = FiniteIntSet> {
    prop::collection::btree_set(lo..=hi, 1..=max_k).prop_map(to_set)
}

pub fn arb_positive(max_k: usize, hi: i64) -> impl Strategy<Value = FiniteIntSet> {
    arb_set(max_k, 1, hi)
}

/// Nonnegative sets with `0 ∈ A` and at least two elements.
pub fn arb_zero(max_k: usize, hi: i64) -> impl Strategy<Value = FiniteIntSet> {
    prop::collection::btree_set(1..=hi, 1..max_k).prop_map(|mut s| {
        s.insert(0);
        to_set(s)
    })
}

/// The folds checked for a kind: `1..=k` throughout, which is every valid
/// fold of the restricted kinds.
pub fn folds(set: &FiniteIntSet) -> std::ops::RangeInclusive<usize> {
    1..=set.len()
}

pub fn check_oracle(set: &FiniteIntSet) -> Result<(), String> {
    for kind in SumsetKind::ALL {
        for h in folds(set) {
            let naive = sumset_naive(set, h, kind).map_err(|e| e.to_string())?;
            let layered = sumset_layered(set, h, kind).map_err(|e| e.to_string())?;
            if naive != layered {
                return Err(format!("{set:?} h={h} {kind}: naive {naive:?} layered {layered:?}"));
            }
        }
    }
    Ok(())
}

pub fn check_symmetry(set: &FiniteIntSet, h: usize) -> Result<(), String> {
    for kind in [SumsetKind::Signed, SumsetKind::RestrictedSigned] {
        let r = sumset_layered(set, h, kind).map_err(|e| e.to_string())?;
        if !r.is_symmetric() {
            return Err(format!("{set:?} h={h} {kind} is not symmetric"));
        }
    }
    Ok(())
}

pub fn check_dilation(set: &FiniteIntSet, h: usize, alpha: i64) -> Result<(), String> {
    let scaled = dilate(set, alpha).map_err(|e| e.to_string())?;
    for kind in SumsetKind::ALL {
        let base = sumset_layered(set, h, kind).map_err(|e| e.to_string())?;
        let mut want: Vec<i64> = base.values.iter().map(|v| v * alpha).collect();
        want.sort_unstable();
        let got = sumset_layered(&scaled, h, kind).map_err(|e| e.to_string())?.values;
        if got != want {
            return Err(format!("{set:?} h={h} {kind} alpha={alpha}"));
        }
    }
    Ok(())
}

fn values(set: &FiniteIntSet, h: usize, kind: SumsetKind) -> Result<BTreeSet<i64>, String> {
    Ok(sumset_layered(set, h, kind)
        .map_err(|e| e.to_string())?
        .values
        .into_iter()
        .collect())
}

/// `h^A ∪ h^(−A) ⊆ h^±A ⊆ h_±A` and `h^A ⊆ hA`.
pub fn check_inclusions(set: &FiniteIntSet, h: usize) -> Result<(), String> {
    let restricted = values(set, h, SumsetKind::Restricted)?;
    let restricted_neg = values(&set.negate(), h, SumsetKind::Restricted)?;
    let restricted_signed = values(set, h, SumsetKind::RestrictedSigned)?;
    let signed = values(set, h, SumsetKind::Signed)?;
    let unrestricted = values(set, h, SumsetKind::Unrestricted)?;
    let fail = |what: &str| Err(format!("{set:?} h={h}: {what}"));
    if !restricted.union(&restricted_neg).all(|v| restricted_signed.contains(v)) {
        return fail("h^A ∪ h^(−A) ⊄ h^±A");
    }
    if !restricted_signed.is_subset(&signed) {
        return fail("h^±A ⊄ h_±A");
    }
    if !restricted.is_subset(&unrestricted) {
        return fail("h^A ⊄ hA");
    }
    Ok(())
}

/// Restricted kinds stay within the sum of the `h` largest `|a_i|`; the
/// others within `h · max|a_i|`.
pub fn check_range(set: &FiniteIntSet, h: usize) -> Result<(), String> {
    let mut mags: Vec<i64> = set.elements().iter().map(|a| a.abs()).collect();
    mags.sort_unstable_by(|a, b| b.cmp(a));
    let top: i64 = mags.iter().take(h).sum();
    for kind in SumsetKind::ALL {
        let limit = if kind.is_restricted() {
            top
        } else {
            h as i64 * mags[0]
        };
        let r = sumset_layered(set, h, kind).map_err(|e| e.to_string())?;
        if let Some(v) = r.values.iter().find(|v| v.abs() > limit) {
            return Err(format!("{set:?} h={h} {kind}: {v} exceeds {limit}"));
        }
    }
    Ok(())
}

fn binom(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Every s/t/u chain holds, every family has its expected distinct count,
/// every value is in `h^±A`, and `|s ∪ −s ∪ t|` equals the direct bound.
pub fn check_witnesses(set: &FiniteIntSet) -> Result<(), String> {
    let k = set.len();
    let zero = set.min() == 0;
    let variant = if zero { TVariant::ZeroInA } else { TVariant::Positive };
    for h in 1..=k {
        let mut families = vec![
            s_family(set, h).map_err(|e| e.to_string())?,
            t_family(set, h, variant).map_err(|e| e.to_string())?,
        ];
        if !zero && h == k && k >= 3 {
            families.push(u_family(set).map_err(|e| e.to_string())?);
        }
        for f in &families {
            let verdict = f.verify(set).map_err(|e| e.to_string())?;
            if !verdict.is_sound() {
                return Err(format!("{set:?} h={h} {:?}-family: {verdict:?}", f.kind));
            }
        }
        let want = 2 * (h * k - h * h) + if zero { binom(h, 2) } else { binom(h + 1, 2) } + 1;
        let got = certified_count(set, h).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("{set:?} h={h}: certified {got}, identity says {want}"));
        }
    }
    Ok(())
}

/// The same scan at 1, 4 and 8 workers yields identical reports.
pub fn check_scan_determinism(config: &ScanConfig) -> Result<(), String> {
    let mut reports = Vec::new();
    for jobs in [1, 4, 8] {
        let mut c = config.clone();
        c.jobs = jobs;
        reports.push(scan(&c).map_err(|e| e.to_string())?.comparable());
    }
    if reports.windows(2).any(|w| w[0] != w[1]) {
        return Err(format!("{} k={} max={}: reports differ across jobs", config.mode, config.k, config.max_element));
    }
    if reports[0].sets_scanned != reports[0].expected_sets {
        return Err("sets_scanned differs from the closed-form count".into());
    }
    Ok(())
}
