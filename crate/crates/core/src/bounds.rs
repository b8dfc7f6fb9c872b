//! Closed-form lower bounds for `|h^±A|` and audits of concrete sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::{sumset_naive, LayeredTable};
use crate::set::{FiniteIntSet, SumsetKind};

/// The two set families the bounds speak about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetFamily {
    /// Every element is strictly positive.
    Positive,
    /// Nonnegative with `0 ∈ A`.
    ContainsZero,
}

impl SetFamily {
    pub fn of(set: &FiniteIntSet) -> Result<Self> {
        if set.is_positive() {
            Ok(SetFamily::Positive)
        } else if set.min() == 0 {
            Ok(SetFamily::ContainsZero)
        } else {
            Err(Error::DomainViolation(format!(
                "{set:?} is neither strictly positive nor nonnegative with 0 in A"
            )))
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SetFamily::Positive => "positive",
            SetFamily::ContainsZero => "contains-zero",
        }
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SetFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "positive" => Ok(SetFamily::Positive),
            "contains-zero" | "zero" => Ok(SetFamily::ContainsZero),
            _ => Err(Error::DomainViolation(format!(
                "unknown family {s:?} (expected positive or zero)"
            ))),
        }
    }
}

/// Which sets a formula applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormulaFamily {
    Positive,
    ContainsZero,
    Any,
}

impl FormulaFamily {
    pub fn admits(self, family: SetFamily) -> bool {
        match self {
            FormulaFamily::Any => true,
            FormulaFamily::Positive => family == SetFamily::Positive,
            FormulaFamily::ContainsZero => family == SetFamily::ContainsZero,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundId {
    T2_1,
    T2_4,
    T3_1,
    T3_4,
    T3_5,
    C2_1,
    C3_1,
    /// `|h^A| >= hk - h^2 + 1`, audited against the restricted sumset.
    TaNathanson,
}

fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}

impl BoundId {
    pub const ALL: [BoundId; 8] = [
        BoundId::T2_1,
        BoundId::T2_4,
        BoundId::T3_1,
        BoundId::T3_4,
        BoundId::T3_5,
        BoundId::C2_1,
        BoundId::C3_1,
        BoundId::TaNathanson,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BoundId::T2_1 => "T2_1",
            BoundId::T2_4 => "T2_4",
            BoundId::T3_1 => "T3_1",
            BoundId::T3_4 => "T3_4",
            BoundId::T3_5 => "T3_5",
            BoundId::C2_1 => "C2_1",
            BoundId::C3_1 => "C3_1",
            BoundId::TaNathanson => "TA_Nathanson",
        }
    }

    pub fn family(self) -> FormulaFamily {
        match self {
            BoundId::T2_1 | BoundId::T2_4 | BoundId::C2_1 => FormulaFamily::Positive,
            BoundId::T3_1 | BoundId::T3_4 | BoundId::T3_5 | BoundId::C3_1 => {
                FormulaFamily::ContainsZero
            }
            BoundId::TaNathanson => FormulaFamily::Any,
        }
    }

    pub fn is_conjecture(self) -> bool {
        matches!(self, BoundId::C2_1 | BoundId::C3_1)
    }

    /// The sumset kind whose cardinality the formula bounds.
    pub fn kind(self) -> SumsetKind {
        match self {
            BoundId::TaNathanson => SumsetKind::Restricted,
            _ => SumsetKind::RestrictedSigned,
        }
    }

    pub fn is_valid(self, k: usize, h: usize) -> bool {
        match self {
            BoundId::T2_1 | BoundId::T3_1 | BoundId::TaNathanson => 1 <= h && h <= k,
            BoundId::C2_1 => k >= 4 && 3 <= h && h < k,
            BoundId::C3_1 => k >= 5 && 3 <= h && h < k,
            BoundId::T2_4 => k >= 4 && h == 3,
            BoundId::T3_4 => k >= 5 && h == 3,
            BoundId::T3_5 => k == 4 && h == 3,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "TA" | "TA_Nathanson" => Ok(BoundId::TaNathanson),
            _ => BoundId::ALL
                .into_iter()
                .find(|id| id.as_str() == s)
                .ok_or_else(|| Error::DomainViolation(format!("unknown bound id {s:?}"))),
        }
    }
}

impl Serialize for BoundId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for BoundId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// The formula value for `id` at `(k, h)`.
pub fn bound_value(id: BoundId, k: usize, h: usize) -> Result<i64> {
    if !id.is_valid(k, h) {
        return Err(Error::NotApplicable {
            id: id.to_string(),
            k,
            h,
        });
    }
    let (k, h) = (k as i64, h as i64);
    Ok(match id {
        BoundId::T2_1 => 2 * (h * k - h * h) + binom2(h + 1) + 1,
        BoundId::T3_1 => 2 * (h * k - h * h) + binom2(h) + 1,
        BoundId::C2_1 => 2 * h * k - h * h + 1,
        BoundId::C3_1 => 2 * h * k - h * (h + 1) + 1,
        BoundId::T2_4 => 6 * k - 8,
        BoundId::T3_4 => 6 * k - 11,
        BoundId::T3_5 => 12,
        BoundId::TaNathanson => h * k - h * h + 1,
    })
}

/// Every formula applicable to a set of the given family, with its value.
pub fn applicable_bounds(family: SetFamily, k: usize, h: usize) -> Vec<(BoundId, i64)> {
    BoundId::ALL
        .into_iter()
        .filter(|id| id.family().admits(family))
        .filter_map(|id| bound_value(id, k, h).ok().map(|v| (id, v)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundStatus {
    Strict,
    Equality,
    #[serde(rename = "VIOLATION")]
    Violation,
}

impl BoundStatus {
    pub fn compare(cardinality: usize, bound: i64) -> Self {
        match (cardinality as i64).cmp(&bound) {
            std::cmp::Ordering::Greater => BoundStatus::Strict,
            std::cmp::Ordering::Equal => BoundStatus::Equality,
            std::cmp::Ordering::Less => BoundStatus::Violation,
        }
    }
}

impl fmt::Display for BoundStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundStatus::Strict => "Strict",
            BoundStatus::Equality => "Equality",
            BoundStatus::Violation => "VIOLATION",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub id: BoundId,
    pub value: i64,
    pub status: BoundStatus,
    /// Set when the formula is compared against a different sumset kind
    /// than the report's cardinality (only `TA_Nathanson`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cardinality: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub set: FiniteIntSet,
    pub h: usize,
    /// `|h^±A|`.
    pub cardinality: usize,
    pub bounds: Vec<BoundEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn entry(&self, id: BoundId) -> Option<&BoundEntry> {
        self.bounds.iter().find(|b| b.id == id)
    }

    pub fn conjecture_violations(&self) -> impl Iterator<Item = &BoundEntry> {
        self.bounds
            .iter()
            .filter(|b| b.id.is_conjecture() && b.status == BoundStatus::Violation)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Confirms a layered cardinality with the naive engine.
pub(crate) fn oracle_cardinality(
    set: &FiniteIntSet,
    h: usize,
    kind: SumsetKind,
    layered: usize,
) -> Result<usize> {
    let naive = sumset_naive(set, h, kind)?.cardinality();
    if naive != layered {
        return Err(Error::EngineMismatch {
            set: set.to_string(),
            h,
            naive,
            layered,
        });
    }
    Ok(naive)
}

/// Computes `|h^±A|` (and `|h^A|` for `TA_Nathanson`) and checks every applicable
/// bound. A theorem-backed violation is an error; a conjecture violation is
/// confirmed by the naive engine and reported with status `VIOLATION`.
pub fn audit(set: &FiniteIntSet, h: usize) -> Result<BoundReport> {
    let family = SetFamily::of(set)?;
    let k = set.len();
    SumsetKind::RestrictedSigned.check_fold(k, h)?;
    let signed = LayeredTable::build(set, h, SumsetKind::RestrictedSigned)?.cardinality(h);
    let restricted = LayeredTable::build(set, h, SumsetKind::Restricted)?.cardinality(h);

    let mut bounds = Vec::new();
    let mut notes = Vec::new();
    for (id, value) in applicable_bounds(family, k, h) {
        let observed = if id.kind() == SumsetKind::Restricted {
            restricted
        } else {
            signed
        };
        let status = BoundStatus::compare(observed, value);
        if status == BoundStatus::Violation {
            let confirmed = oracle_cardinality(set, h, id.kind(), observed)?;
            if !id.is_conjecture() {
                return Err(Error::TheoremViolation {
                    id: id.to_string(),
                    set: set.to_string(),
                    h,
                    cardinality: confirmed,
                    bound: value,
                });
            }
        }
        if id == BoundId::T2_1 && status == BoundStatus::Equality && 3 <= h && h < k {
            notes.push(format!("T2_1 attained at 3 <= h = {h} < k = {k}"));
        }
        bounds.push(BoundEntry {
            id,
            value,
            status,
            cardinality: (id.kind() == SumsetKind::Restricted).then_some(restricted),
        });
    }
    Ok(BoundReport {
        set: set.clone(),
        h,
        cardinality: signed,
        bounds,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(raw: &[i64]) -> FiniteIntSet {
        FiniteIntSet::new(raw).unwrap()
    }

    #[test]
    fn formula_values() {
        assert_eq!(bound_value(BoundId::T2_1, 5, 2).unwrap(), 16);
        assert_eq!(bound_value(BoundId::T3_1, 4, 4).unwrap(), 7);
        assert_eq!(bound_value(BoundId::T2_4, 4, 3).unwrap(), 16);
        assert_eq!(bound_value(BoundId::C3_1, 5, 3).unwrap(), 19);
        assert_eq!(bound_value(BoundId::C2_1, 5, 4).unwrap(), 25);
        assert_eq!(bound_value(BoundId::T3_4, 5, 3).unwrap(), 19);
        assert_eq!(bound_value(BoundId::T3_5, 4, 3).unwrap(), 12);
        assert_eq!(bound_value(BoundId::TaNathanson, 5, 2).unwrap(), 7);
    }

    #[test]
    fn h3_conjectures_agree_with_theorems() {
        for k in 4..20 {
            assert_eq!(bound_value(BoundId::C2_1, k, 3).unwrap(), bound_value(BoundId::T2_4, k, 3).unwrap());
        }
        for k in 5..20 {
            assert_eq!(bound_value(BoundId::C3_1, k, 3).unwrap(), bound_value(BoundId::T3_4, k, 3).unwrap());
        }
    }

    #[test]
    fn validity_windows() {
        for (id, k, h) in [
            (BoundId::T2_1, 3, 4),
            (BoundId::T2_1, 3, 0),
            (BoundId::C2_1, 3, 3),
            (BoundId::C2_1, 5, 5),
            (BoundId::C3_1, 4, 3),
            (BoundId::T2_4, 4, 2),
            (BoundId::T3_4, 4, 3),
            (BoundId::T3_5, 5, 3),
        ] {
            assert!(
                matches!(bound_value(id, k, h), Err(Error::NotApplicable { .. })),
                "{id} k={k} h={h}"
            );
        }
    }

    #[test]
    fn ids_round_trip() {
        for id in BoundId::ALL {
            assert_eq!(id.as_str().parse::<BoundId>().unwrap(), id);
        }
        assert_eq!("TA".parse::<BoundId>().unwrap(), BoundId::TaNathanson);
        assert!("T9_9".parse::<BoundId>().is_err());
    }

    #[test]
    fn audit_odd_progression_pairs() {
        let r = audit(&set(&[1, 3, 5, 7]), 2).unwrap();
        assert_eq!(r.cardinality, 12);
        let t = r.entry(BoundId::T2_1).unwrap();
        assert_eq!((t.value, t.status), (12, BoundStatus::Equality));
        let ta = r.entry(BoundId::TaNathanson).unwrap();
        assert_eq!((ta.value, ta.cardinality), (5, Some(5)));
        assert!(r.entry(BoundId::T3_1).is_none());
    }

    #[test]
    fn audit_special_quadruple() {
        let r = audit(&set(&[0, 1, 2, 4]), 3).unwrap();
        assert_eq!(r.cardinality, 12);
        let t = r.entry(BoundId::T3_5).unwrap();
        assert_eq!((t.value, t.status), (12, BoundStatus::Equality));
        assert_eq!(r.entry(BoundId::T3_1).unwrap().status, BoundStatus::Strict);
    }

    #[test]
    fn audit_strict_pairs() {
        let r = audit(&set(&[1, 2, 4]), 2).unwrap();
        assert_eq!(r.cardinality, 10);
        let t = r.entry(BoundId::T2_1).unwrap();
        assert_eq!((t.value, t.status), (8, BoundStatus::Strict));
    }

    #[test]
    fn audit_rejects_mixed_signs() {
        assert!(matches!(audit(&set(&[-1, 2, 3]), 2), Err(Error::DomainViolation(_))));
        assert!(matches!(audit(&set(&[1, 2, 3]), 4), Err(Error::InvalidFold { .. })));
    }

    #[test]
    fn inverse_counterexample_is_only_an_equality() {
        let r = audit(&set(&[0, 1, 2, 4, 6]), 4).unwrap();
        assert_eq!(r.cardinality, 21);
        assert_eq!(r.entry(BoundId::C3_1).unwrap().status, BoundStatus::Equality);
    }

    #[test]
    fn report_json_shape() {
        let r = audit(&set(&[1, 3, 5, 7]), 2).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["set"], "1,3,5,7");
        assert_eq!(v["bounds"][0], serde_json::json!({"id": "T2_1", "value": 12, "status": "Equality"}));
        let back: BoundReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn single_fold_tightness() {
        for raw in [&[3, 8, 20][..], &[1, 2], &[5, 6, 7, 100]] {
            let a = set(raw);
            assert_eq!(audit(&a, 1).unwrap().cardinality, 2 * a.len());
        }
        let a = set(&[0, 5, 9]);
        assert_eq!(audit(&a, 1).unwrap().cardinality, 2 * a.len() - 1);
    }
}
