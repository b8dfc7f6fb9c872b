//! Exhaustive scans over gcd-normalized sets: theorem re-verification and
//! conjecture counterexample search.
//!
//! The space is split into blocks by the first two free elements. Blocks are
//! dealt round-robin to `jobs` scoped threads and the per-block results are
//! concatenated in block order, so the report does not depend on `jobs`.

mod enumerate;
mod report;

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use enumerate::{enumerate_normalized_sets, normalized_set_count};
pub use report::{
    Counterexample, CounterexampleKind, EqualityRecord, FailureReason, ScanFailure, ScanReport,
};

use crate::bounds::{bound_value, oracle_cardinality, BoundId, SetFamily};
use crate::error::{Error, Result};
use crate::inverse::{classify_with_cardinality, InverseClaim};
use crate::kernel::{sumset_naive, LayeredTable};
use crate::set::FiniteIntSet;

/// A scannable statement: a direct bound, an inverse statement, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Claim {
    Bound(BoundId),
    Inverse(InverseClaim),
}

impl Claim {
    pub fn is_conjecture(self) -> bool {
        match self {
            Claim::Bound(id) => id.is_conjecture(),
            Claim::Inverse(c) => c.is_conjecture(),
        }
    }

    /// The direct bound checked on every set.
    pub fn bound_id(self) -> BoundId {
        match self {
            Claim::Bound(id) => id,
            Claim::Inverse(c) => c.bound_id(),
        }
    }

    /// The inverse statement consulted at equality, and whether a mismatch
    /// is a failure (`true`) or only recorded in the census (`false`).
    pub fn inverse(self) -> Option<(InverseClaim, bool)> {
        match self {
            Claim::Bound(BoundId::T2_4) => Some((InverseClaim::T2_4, true)),
            Claim::Bound(BoundId::T3_4) => Some((InverseClaim::T3_4, true)),
            Claim::Bound(BoundId::T3_5) => Some((InverseClaim::T3_5, true)),
            Claim::Bound(BoundId::C2_1) => Some((InverseClaim::C2_2, false)),
            Claim::Bound(BoundId::C3_1) => Some((InverseClaim::C3_2, false)),
            Claim::Bound(_) => None,
            Claim::Inverse(c) => Some((c, true)),
        }
    }

    pub fn family(self) -> Option<SetFamily> {
        match self {
            Claim::Bound(BoundId::TaNathanson) => None,
            Claim::Bound(id) => Some(match id.family() {
                crate::bounds::FormulaFamily::ContainsZero => SetFamily::ContainsZero,
                _ => SetFamily::Positive,
            }),
            Claim::Inverse(c) => Some(c.family()),
        }
    }

    pub fn covers(self, k: usize, h: usize) -> bool {
        match self {
            Claim::Bound(id) => id.is_valid(k, h),
            Claim::Inverse(c) => c.covers(k, h),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Bound(BoundId::TaNathanson) => f.write_str("TA"),
            Claim::Bound(id) => write!(f, "{id}"),
            Claim::Inverse(c) => write!(f, "{c}"),
        }
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(id) = s.parse::<BoundId>() {
            return Ok(Claim::Bound(id));
        }
        s.parse::<InverseClaim>()
            .map(Claim::Inverse)
            .map_err(|_| Error::DomainViolation(format!("unknown claim {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScanMode {
    VerifyTheorem(Claim),
    ScanConjecture(Claim),
}

impl ScanMode {
    pub fn claim(self) -> Claim {
        match self {
            ScanMode::VerifyTheorem(c) | ScanMode::ScanConjecture(c) => c,
        }
    }
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScanMode::VerifyTheorem(c) => write!(f, "verify:{c}"),
            ScanMode::ScanConjecture(c) => write!(f, "conj:{c}"),
        }
    }
}

impl FromStr for ScanMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (mode, claim) = s
            .split_once(':')
            .ok_or_else(|| Error::DomainViolation(format!("mode {s:?} is not verify:ID or conj:ID")))?;
        let claim: Claim = claim.parse()?;
        match mode {
            "verify" if !claim.is_conjecture() => Ok(ScanMode::VerifyTheorem(claim)),
            "conj" if claim.is_conjecture() => Ok(ScanMode::ScanConjecture(claim)),
            "verify" | "conj" => Err(Error::DomainViolation(format!(
                "{claim} cannot be scanned in {mode} mode"
            ))),
            _ => Err(Error::DomainViolation(format!("unknown scan mode {mode:?}"))),
        }
    }
}

impl Serialize for ScanMode {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ScanMode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub k: usize,
    /// Inclusive fold range. Every fold must be covered by the claim.
    pub h_min: usize,
    pub h_max: usize,
    pub family: SetFamily,
    pub max_element: i64,
    pub mode: ScanMode,
    #[serde(skip, default = "default_jobs")]
    pub jobs: usize,
}

fn default_jobs() -> usize {
    1
}

impl ScanConfig {
    /// A config over every fold `h` the claim covers for this `k`.
    pub fn all_folds(k: usize, family: SetFamily, max_element: i64, mode: ScanMode) -> Result<Self> {
        let claim = mode.claim();
        let covered: Vec<usize> = (1..=k).filter(|&h| claim.covers(k, h)).collect();
        match (covered.first(), covered.last()) {
            (Some(&h_min), Some(&h_max)) => Ok(ScanConfig {
                k,
                h_min,
                h_max,
                family,
                max_element,
                mode,
                jobs: 1,
            }),
            _ => Err(Error::NotApplicable {
                id: claim.to_string(),
                k,
                h: 0,
            }),
        }
    }

    pub fn folds(&self) -> RangeInclusive<usize> {
        self.h_min..=self.h_max
    }

    pub fn validate(&self) -> Result<()> {
        let claim = self.mode.claim();
        if let Some(family) = claim.family() {
            if family != self.family {
                return Err(Error::DomainViolation(format!(
                    "{claim} is about {family} sets, not {}",
                    self.family
                )));
            }
        }
        if self.h_min == 0 || self.h_min > self.h_max {
            return Err(Error::DomainViolation(format!(
                "empty fold range {}..={}",
                self.h_min, self.h_max
            )));
        }
        if let Some(h) = self.folds().find(|&h| !claim.covers(self.k, h)) {
            return Err(Error::NotApplicable {
                id: claim.to_string(),
                k: self.k,
                h,
            });
        }
        if self.jobs == 0 {
            return Err(Error::DomainViolation("jobs must be at least 1".into()));
        }
        enumerate::check_space(self.k, self.max_element, self.family)
    }
}

#[derive(Debug, Default)]
struct BlockOutcome {
    sets: u64,
    equalities: Vec<EqualityRecord>,
    failures: Vec<ScanFailure>,
    counterexamples: Vec<Counterexample>,
}

struct Scanner<'a> {
    config: &'a ScanConfig,
    bound: BoundId,
    inverse: Option<(InverseClaim, bool)>,
    theorem_mode: bool,
}

impl Scanner<'_> {
    fn scan_block(&self, prefix: &[i64]) -> Result<BlockOutcome> {
        let c = self.config;
        let mut out = BlockOutcome::default();
        for set in enumerate::block_sets(prefix, c.k, c.max_element, c.family) {
            out.sets += 1;
            self.scan_set(&set, &mut out)?;
        }
        Ok(out)
    }

    fn scan_set(&self, set: &FiniteIntSet, out: &mut BlockOutcome) -> Result<()> {
        let kind = self.bound.kind();
        let table = LayeredTable::build(set, self.config.h_max, kind)?;
        for h in self.config.folds() {
            let layered = table.cardinality(h);
            let bound = bound_value(self.bound, set.len(), h)?;
            if (layered as i64) < bound {
                let confirmed = oracle_cardinality(set, h, kind, layered)?;
                if self.theorem_mode {
                    out.failures.push(ScanFailure {
                        set: set.clone(),
                        h,
                        cardinality: confirmed,
                        bound,
                        reason: FailureReason::BoundViolation,
                        claim: self.config.mode.claim().to_string(),
                    });
                } else {
                    out.counterexamples.push(self.counterexample(
                        set,
                        h,
                        bound,
                        CounterexampleKind::Bound,
                        self.bound.to_string(),
                    )?);
                }
                continue;
            }
            let equality = layered as i64 == bound;
            let Some((claim, binding)) = self.inverse else {
                if equality {
                    out.equalities.push(EqualityRecord {
                        set: set.clone(),
                        h,
                        cardinality: layered,
                        family: None,
                        matches_prediction: None,
                    });
                }
                continue;
            };
            let classification = classify_with_cardinality(set, h, claim, layered)?;
            if equality {
                out.equalities.push(EqualityRecord {
                    set: set.clone(),
                    h,
                    cardinality: layered,
                    family: classification.matched_family.map(|f| f.to_string()),
                    matches_prediction: Some(classification.consistent),
                });
            }
            if classification.consistent || !binding {
                continue;
            }
            oracle_cardinality(set, h, kind, layered)?;
            if self.theorem_mode {
                out.failures.push(ScanFailure {
                    set: set.clone(),
                    h,
                    cardinality: layered,
                    bound,
                    reason: if equality {
                        FailureReason::EqualityOutsideFamily
                    } else {
                        FailureReason::FamilyAboveBound
                    },
                    claim: claim.to_string(),
                });
            } else {
                out.counterexamples.push(self.counterexample(
                    set,
                    h,
                    bound,
                    if equality {
                        CounterexampleKind::EqualityOutsideFamily
                    } else {
                        CounterexampleKind::FamilyAboveBound
                    },
                    claim.to_string(),
                )?);
            }
        }
        Ok(())
    }

    /// Reruns both engines and attaches the naive engine's values.
    fn counterexample(
        &self,
        set: &FiniteIntSet,
        h: usize,
        bound: i64,
        kind: CounterexampleKind,
        claim: String,
    ) -> Result<Counterexample> {
        let sumset_kind = self.bound.kind();
        let naive = sumset_naive(set, h, sumset_kind)?;
        let layered = LayeredTable::build(set, h, sumset_kind)?.result(h);
        if naive != layered {
            return Err(Error::EngineMismatch {
                set: set.to_string(),
                h,
                naive: naive.cardinality(),
                layered: layered.cardinality(),
            });
        }
        Ok(Counterexample {
            set: set.clone(),
            h,
            cardinality: naive.cardinality(),
            bound,
            kind,
            claim,
            naive_cardinality: naive.cardinality(),
            layered_cardinality: layered.cardinality(),
            oracle_values: naive.values,
        })
    }
}

/// Runs a scan. Bound violations in theorem mode and unmatched equality sets
/// are collected in the report rather than stopping the scan; kernel errors
/// abort with the failing block.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    config.validate()?;
    let started = Instant::now();
    let claim = config.mode.claim();
    let scanner = Scanner {
        config,
        bound: claim.bound_id(),
        inverse: claim.inverse(),
        theorem_mode: matches!(config.mode, ScanMode::VerifyTheorem(_)),
    };
    let blocks = enumerate::prefix_blocks(config.k, config.max_element, config.family);
    let jobs = config.jobs.min(blocks.len()).max(1);

    let mut outcomes: Vec<Option<Result<BlockOutcome>>> = (0..blocks.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|worker| {
                let scanner = &scanner;
                let blocks = &blocks;
                scope.spawn(move || {
                    (worker..blocks.len())
                        .step_by(jobs)
                        .map(|b| (b, scanner.scan_block(&blocks[b])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for (worker, handle) in handles.into_iter().enumerate() {
            match handle.join() {
                Ok(results) => {
                    for (b, r) in results {
                        outcomes[b] = Some(r);
                    }
                }
                Err(_) => {
                    for b in (worker..blocks.len()).step_by(jobs) {
                        outcomes[b] = Some(Err(Error::Worker {
                            block: b,
                            reason: format!("worker {worker} panicked"),
                        }));
                    }
                }
            }
        }
    });

    let mut report = ScanReport {
        config: config.clone(),
        sets_scanned: 0,
        expected_sets: normalized_set_count(config.k, config.max_element, config.family)?,
        equalities: Vec::new(),
        classification_failures: Vec::new(),
        conjecture_counterexamples: Vec::new(),
        wall_time_ms: 0,
    };
    for (b, outcome) in outcomes.into_iter().enumerate() {
        let outcome = outcome
            .unwrap_or_else(|| Err(Error::Worker { block: b, reason: "block not scanned".into() }))
            .map_err(|e| match e {
                Error::Worker { .. } => e,
                other => Error::Worker {
                    block: b,
                    reason: format!("prefix {:?}: {other}", blocks[b]),
                },
            })?;
        report.sets_scanned += outcome.sets;
        report.equalities.extend(outcome.equalities);
        report.classification_failures.extend(outcome.failures);
        report.conjecture_counterexamples.extend(outcome.counterexamples);
    }
    if report.sets_scanned != report.expected_sets {
        return Err(Error::Worker {
            block: blocks.len(),
            reason: format!(
                "scanned {} sets but the space holds {}",
                report.sets_scanned, report.expected_sets
            ),
        });
    }
    report.wall_time_ms = started.elapsed().as_millis() as u64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(mode: &str, k: usize, family: SetFamily, max: i64) -> ScanConfig {
        ScanConfig::all_folds(k, family, max, mode.parse().unwrap()).unwrap()
    }

    fn census(report: &ScanReport) -> Vec<String> {
        report.equalities.iter().map(|e| e.set.to_string()).collect()
    }

    #[test]
    fn modes_parse() {
        assert_eq!(
            "verify:T2_4".parse::<ScanMode>().unwrap(),
            ScanMode::VerifyTheorem(Claim::Bound(BoundId::T2_4))
        );
        assert_eq!(
            "conj:C3_2".parse::<ScanMode>().unwrap(),
            ScanMode::ScanConjecture(Claim::Inverse(InverseClaim::C3_2))
        );
        assert_eq!("verify:TA".parse::<ScanMode>().unwrap().to_string(), "verify:TA");
        for bad in ["verify:C2_1", "conj:T2_1", "check:T2_1", "T2_1", "verify:X"] {
            assert!(bad.parse::<ScanMode>().is_err(), "{bad}");
        }
    }

    #[test]
    fn odd_progressions_are_the_h3_equalities() {
        let r = scan(&config("verify:T2_4", 4, SetFamily::Positive, 20)).unwrap();
        assert_eq!(census(&r), ["1,3,5,7"]);
        assert!(r.classification_failures.is_empty());
        assert_eq!(r.sets_scanned, r.expected_sets);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn special_quadruple_is_the_only_equality() {
        let r = scan(&config("verify:T3_5", 4, SetFamily::ContainsZero, 20)).unwrap();
        assert_eq!(census(&r), ["0,1,2,4"]);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn conjecture_census() {
        let mut c = config("conj:C2_1", 5, SetFamily::Positive, 16);
        c.h_min = 4;
        let r = scan(&c).unwrap();
        assert!(r.conjecture_counterexamples.is_empty());
        assert_eq!(census(&r), ["1,3,5,7,9"]);
        assert_eq!(r.equalities[0].matches_prediction, Some(true));
    }

    #[test]
    fn inverse_conjecture_counterexample_carries_its_trace() {
        let mut c = config("conj:C3_2", 5, SetFamily::ContainsZero, 8);
        c.h_min = 4;
        let r = scan(&c).unwrap();
        assert_eq!(r.exit_code(), 3);
        assert_eq!(r.conjecture_counterexamples.len(), 1);
        let ce = &r.conjecture_counterexamples[0];
        assert_eq!(ce.set.to_string(), "0,1,2,4,6");
        assert_eq!((ce.h, ce.cardinality, ce.bound), (4, 21, 21));
        assert_eq!(ce.kind, CounterexampleKind::EqualityOutsideFamily);
        assert_eq!(ce.oracle_values.len(), 21);
        assert_eq!(ce.naive_cardinality, ce.layered_cardinality);
    }

    #[test]
    fn parallelism_does_not_change_reports() {
        let c = config("verify:T2_1", 4, SetFamily::Positive, 13);
        let base = scan(&c).unwrap().comparable();
        for jobs in [2, 3, 8, 1000] {
            let mut c = c.clone();
            c.jobs = jobs;
            assert_eq!(scan(&c).unwrap().comparable(), base, "jobs={jobs}");
        }
    }

    #[test]
    fn config_validation() {
        let mut c = config("verify:T2_4", 4, SetFamily::Positive, 20);
        c.family = SetFamily::ContainsZero;
        assert!(matches!(scan(&c), Err(Error::DomainViolation(_))));
        let mut c = config("verify:T2_4", 4, SetFamily::Positive, 20);
        c.h_max = 4;
        assert!(matches!(scan(&c), Err(Error::NotApplicable { .. })));
        let c = config("verify:T2_1", 4, SetFamily::Positive, 3);
        assert!(matches!(scan(&c), Err(Error::EmptySpace(_))));
        assert!(ScanConfig::all_folds(3, SetFamily::Positive, 9, "verify:T2_4".parse().unwrap()).is_err());
    }

    #[test]
    fn nathanson_bound_scans_any_family() {
        for family in [SetFamily::Positive, SetFamily::ContainsZero] {
            let r = scan(&config("verify:TA", 4, family, 10)).unwrap();
            assert_eq!(r.exit_code(), 0);
            assert!(!r.equalities.is_empty());
        }
    }
}
