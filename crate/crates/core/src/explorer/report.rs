use std::io::Write;

use serde::{Deserialize, Serialize};

use super::ScanConfig;
use crate::error::{Error, Result};
use crate::set::FiniteIntSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EqualityRecord {
    pub set: FiniteIntSet,
    pub h: usize,
    pub cardinality: usize,
    /// The matched extremal family, when an inverse statement was consulted.
    pub family: Option<String>,
    pub matches_prediction: Option<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureReason {
    BoundViolation,
    /// Equality holds but the set is outside the predicted family.
    EqualityOutsideFamily,
    /// The set is in the predicted family but exceeds the bound.
    FamilyAboveBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanFailure {
    pub set: FiniteIntSet,
    pub h: usize,
    pub cardinality: usize,
    pub bound: i64,
    pub reason: FailureReason,
    pub claim: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CounterexampleKind {
    Bound,
    EqualityOutsideFamily,
    FamilyAboveBound,
}

/// A conjecture counterexample confirmed by both engines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub set: FiniteIntSet,
    pub h: usize,
    pub cardinality: usize,
    pub bound: i64,
    pub kind: CounterexampleKind,
    pub claim: String,
    pub naive_cardinality: usize,
    pub layered_cardinality: usize,
    /// Every value of the sumset as listed by the naive engine.
    pub oracle_values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub sets_scanned: u64,
    /// Closed-form size of the space; equals `sets_scanned`.
    pub expected_sets: u64,
    pub equalities: Vec<EqualityRecord>,
    pub classification_failures: Vec<ScanFailure>,
    pub conjecture_counterexamples: Vec<Counterexample>,
    pub wall_time_ms: u64,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    record: &'a str,
    set: String,
    h: usize,
    cardinality: usize,
    bound: Option<i64>,
    family: Option<&'a str>,
    detail: String,
}

impl ScanReport {
    /// 0 clean, 2 theorem failure, 3 conjecture counterexample.
    pub fn exit_code(&self) -> i32 {
        if !self.classification_failures.is_empty() {
            2
        } else if !self.conjecture_counterexamples.is_empty() {
            3
        } else {
            0
        }
    }

    /// The report with the run-dependent fields (`wall_time_ms` and the
    /// worker count) reset, for comparisons.
    pub fn comparable(&self) -> ScanReport {
        let mut config = self.config.clone();
        config.jobs = 1;
        ScanReport {
            config,
            wall_time_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per equality, failure and counterexample.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::Io(e.to_string());
        for e in &self.equalities {
            w.serialize(CsvRow {
                record: "equality",
                set: e.set.to_string(),
                h: e.h,
                cardinality: e.cardinality,
                bound: None,
                family: e.family.as_deref(),
                detail: match e.matches_prediction {
                    Some(true) => "matches".into(),
                    Some(false) => "outside-family".into(),
                    None => String::new(),
                },
            })
            .map_err(io)?;
        }
        for f in &self.classification_failures {
            w.serialize(CsvRow {
                record: "failure",
                set: f.set.to_string(),
                h: f.h,
                cardinality: f.cardinality,
                bound: Some(f.bound),
                family: None,
                detail: format!("{} {}", f.claim, serde_json::to_value(f.reason).unwrap().as_str().unwrap()),
            })
            .map_err(io)?;
        }
        for c in &self.conjecture_counterexamples {
            w.serialize(CsvRow {
                record: "counterexample",
                set: c.set.to_string(),
                h: c.h,
                cardinality: c.cardinality,
                bound: Some(c.bound),
                family: None,
                detail: format!("{} {}", c.claim, serde_json::to_value(c.kind).unwrap().as_str().unwrap()),
            })
            .map_err(io)?;
        }
        w.flush()?;
        Ok(())
    }
}
