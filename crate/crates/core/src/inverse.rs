//! Arithmetic-progression detection and classification of bound-equality
//! sets against the predicted extremal families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bounds::{bound_value, BoundId, SetFamily};
use crate::error::{Error, Result};
use crate::kernel::sumset_layered;
use crate::set::{FiniteIntSet, SumsetKind};
use crate::witness::{gen_family, ExtremalFamily};

/// The common difference of `A` if it is an arithmetic progression.
pub fn is_arithmetic_progression(set: &FiniteIntSet) -> Result<Option<i64>> {
    let a = set.elements();
    if a.len() < 2 {
        return Err(Error::Degenerate);
    }
    let d = a[1] - a[0];
    Ok(a.windows(2).all(|w| w[1] - w[0] == d).then_some(d))
}

/// Inverse statements: proven theorems and the two open conjectures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InverseClaim {
    T2_2,
    T2_3,
    T2_4,
    T3_2,
    T3_3,
    T3_4,
    T3_5,
    C2_2,
    C3_2,
}

/// Structural shapes the inverse statements predict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Shape {
    OddAp,
    Interval1K,
    Interval0K,
    Special0124,
    SumClosed3,
    SumClosed4,
    Pair,
    ZeroTriple,
}

impl InverseClaim {
    pub const ALL: [InverseClaim; 9] = [
        InverseClaim::T2_2,
        InverseClaim::T2_3,
        InverseClaim::T2_4,
        InverseClaim::T3_2,
        InverseClaim::T3_3,
        InverseClaim::T3_4,
        InverseClaim::T3_5,
        InverseClaim::C2_2,
        InverseClaim::C3_2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            InverseClaim::T2_2 => "T2_2",
            InverseClaim::T2_3 => "T2_3",
            InverseClaim::T2_4 => "T2_4",
            InverseClaim::T3_2 => "T3_2",
            InverseClaim::T3_3 => "T3_3",
            InverseClaim::T3_4 => "T3_4",
            InverseClaim::T3_5 => "T3_5",
            InverseClaim::C2_2 => "C2_2",
            InverseClaim::C3_2 => "C3_2",
        }
    }

    pub fn is_conjecture(self) -> bool {
        matches!(self, InverseClaim::C2_2 | InverseClaim::C3_2)
    }

    pub fn family(self) -> SetFamily {
        match self {
            InverseClaim::T2_2 | InverseClaim::T2_3 | InverseClaim::T2_4 | InverseClaim::C2_2 => {
                SetFamily::Positive
            }
            _ => SetFamily::ContainsZero,
        }
    }

    /// Whether the statement speaks about `(k, h)`.
    pub fn covers(self, k: usize, h: usize) -> bool {
        match self {
            InverseClaim::T2_2 | InverseClaim::T3_2 => h == 2 && k >= 2,
            InverseClaim::T2_3 | InverseClaim::T3_3 => h == k && k >= 3,
            InverseClaim::T2_4 => h == 3 && k >= 4,
            InverseClaim::T3_4 => h == 3 && k >= 5,
            InverseClaim::T3_5 => h == 3 && k == 4,
            InverseClaim::C2_2 => k >= 4 && 3 <= h && h < k,
            InverseClaim::C3_2 => k >= 5 && 3 <= h && h < k,
        }
    }

    /// The direct bound whose equality case the statement describes.
    pub fn bound_id(self) -> BoundId {
        match self {
            InverseClaim::T2_2 | InverseClaim::T2_3 => BoundId::T2_1,
            InverseClaim::T3_2 | InverseClaim::T3_3 => BoundId::T3_1,
            InverseClaim::T2_4 => BoundId::T2_4,
            InverseClaim::T3_4 => BoundId::T3_4,
            InverseClaim::T3_5 => BoundId::T3_5,
            InverseClaim::C2_2 => BoundId::C2_1,
            InverseClaim::C3_2 => BoundId::C3_1,
        }
    }

    /// The predicted equality family for sets of size `k`.
    pub fn shape(self, k: usize) -> Shape {
        match self {
            InverseClaim::T2_2 if k == 2 => Shape::Pair,
            InverseClaim::T2_2 | InverseClaim::T2_4 | InverseClaim::C2_2 => Shape::OddAp,
            InverseClaim::T2_3 if k == 3 => Shape::SumClosed3,
            InverseClaim::T2_3 => Shape::Interval1K,
            InverseClaim::T3_3 if k == 3 => Shape::ZeroTriple,
            InverseClaim::T3_3 if k == 4 => Shape::SumClosed4,
            InverseClaim::T3_5 => Shape::Special0124,
            InverseClaim::T3_2 | InverseClaim::T3_3 | InverseClaim::T3_4 | InverseClaim::C3_2 => {
                Shape::Interval0K
            }
        }
    }

    /// The proven inverse theorem covering `(family, k, h)`, if any.
    pub fn theorem_for(family: SetFamily, k: usize, h: usize) -> Option<Self> {
        let candidates: &[InverseClaim] = match family {
            SetFamily::Positive => &[InverseClaim::T2_2, InverseClaim::T2_3, InverseClaim::T2_4],
            SetFamily::ContainsZero => &[
                InverseClaim::T3_2,
                InverseClaim::T3_3,
                InverseClaim::T3_4,
                InverseClaim::T3_5,
            ],
        };
        candidates.iter().copied().find(|c| c.covers(k, h))
    }
}

impl fmt::Display for InverseClaim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InverseClaim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        InverseClaim::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::DomainViolation(format!("unknown inverse claim {s:?}")))
    }
}

impl Serialize for InverseClaim {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for InverseClaim {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// The parameters of `shape` that describe `set`, if it belongs to it.
pub fn detect_shape(set: &FiniteIntSet, shape: Shape) -> Option<ExtremalFamily> {
    let a = set.elements();
    let k = a.len();
    let candidate = match shape {
        Shape::OddAp => ExtremalFamily::OddAp { k, d: a[0] },
        Shape::Interval1K => ExtremalFamily::Interval1K { k, d: a[0] },
        Shape::Interval0K if k >= 2 => ExtremalFamily::Interval0K { k, d: a[1] },
        Shape::Special0124 if k == 4 => ExtremalFamily::Special0124 { d: a[1] },
        Shape::SumClosed3 if k == 3 && a[2] == a[0].checked_add(a[1])? => {
            ExtremalFamily::SumClosed3 { a0: a[0], a1: a[1] }
        }
        Shape::SumClosed4 if k == 4 && a[0] == 0 && a[3] == a[1].checked_add(a[2])? => {
            ExtremalFamily::SumClosed4 { a1: a[1], a2: a[2] }
        }
        Shape::Pair if k == 2 => ExtremalFamily::Pair { a0: a[0], a1: a[1] },
        Shape::ZeroTriple if k == 3 && a[0] == 0 => ExtremalFamily::ZeroTriple { a1: a[1], a2: a[2] },
        _ => return None,
    };
    // The regenerated member must reproduce the set exactly.
    match gen_family(&candidate) {
        Ok(member) if &member == set => Some(candidate),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalClassification {
    pub set: FiniteIntSet,
    pub h: usize,
    pub cardinality: usize,
    pub bound: i64,
    pub equality: bool,
    pub matched_family: Option<ExtremalFamily>,
    pub theorem: InverseClaim,
    /// Equality holds exactly when the set is in the predicted family.
    pub consistent: bool,
}

#[derive(Serialize, Deserialize)]
struct ClassificationWire {
    set: FiniteIntSet,
    h: usize,
    cardinality: usize,
    bound: i64,
    equality: bool,
    family: Option<String>,
    params: Option<BTreeMap<String, i64>>,
    theorem: InverseClaim,
    consistent: bool,
}

impl Serialize for ExtremalClassification {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ClassificationWire {
            set: self.set.clone(),
            h: self.h,
            cardinality: self.cardinality,
            bound: self.bound,
            equality: self.equality,
            family: self.matched_family.map(|f| f.name().to_string()),
            params: self
                .matched_family
                .map(|f| f.params().into_iter().map(|(k, v)| (k.to_string(), v)).collect()),
            theorem: self.theorem,
            consistent: self.consistent,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExtremalClassification {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = ClassificationWire::deserialize(deserializer)?;
        let matched_family = match w.family {
            Some(name) => {
                let params: Vec<(String, i64)> = w.params.unwrap_or_default().into_iter().collect();
                Some(ExtremalFamily::from_parts(&name, &params).map_err(serde::de::Error::custom)?)
            }
            None => None,
        };
        Ok(ExtremalClassification {
            set: w.set,
            h: w.h,
            cardinality: w.cardinality,
            bound: w.bound,
            equality: w.equality,
            matched_family,
            theorem: w.theorem,
            consistent: w.consistent,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Classification {
    Covered(ExtremalClassification),
    NotCovered { set: FiniteIntSet, k: usize, h: usize, not_covered: bool },
}

impl Classification {
    pub fn covered(&self) -> Option<&ExtremalClassification> {
        match self {
            Classification::Covered(c) => Some(c),
            Classification::NotCovered { .. } => None,
        }
    }
}

/// Classifies `A` against one inverse statement given `|h^±A|`.
pub(crate) fn classify_with_cardinality(
    set: &FiniteIntSet,
    h: usize,
    claim: InverseClaim,
    cardinality: usize,
) -> Result<ExtremalClassification> {
    let k = set.len();
    let family = SetFamily::of(set)?;
    if family != claim.family() || !claim.covers(k, h) {
        return Err(Error::NotApplicable {
            id: claim.to_string(),
            k,
            h,
        });
    }
    let bound = bound_value(claim.bound_id(), k, h)?;
    let equality = cardinality as i64 == bound;
    let matched_family = detect_shape(set, claim.shape(k));
    Ok(ExtremalClassification {
        set: set.clone(),
        h,
        cardinality,
        bound,
        equality,
        consistent: equality == matched_family.is_some(),
        matched_family,
        theorem: claim,
    })
}

/// Classifies `A` against a specific inverse theorem or conjecture,
/// recomputing `|h^±A|`.
pub fn classify_against(set: &FiniteIntSet, h: usize, claim: InverseClaim) -> Result<ExtremalClassification> {
    SumsetKind::RestrictedSigned.check_fold(set.len(), h)?;
    let cardinality = sumset_layered(set, h, SumsetKind::RestrictedSigned)?.cardinality();
    classify_with_cardinality(set, h, claim, cardinality)
}

/// Classifies `A` against the proven inverse theorem covering `(k, h)`.
pub fn classify_extremal(set: &FiniteIntSet, h: usize) -> Result<Classification> {
    let family = SetFamily::of(set)?;
    let k = set.len();
    SumsetKind::RestrictedSigned.check_fold(k, h)?;
    match InverseClaim::theorem_for(family, k, h) {
        Some(claim) => classify_against(set, h, claim).map(Classification::Covered),
        None => Ok(Classification::NotCovered {
            set: set.clone(),
            k,
            h,
            not_covered: true,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(raw: &[i64]) -> FiniteIntSet {
        FiniteIntSet::new(raw).unwrap()
    }

    fn covered(raw: &[i64], h: usize) -> ExtremalClassification {
        classify_extremal(&set(raw), h).unwrap().covered().unwrap().clone()
    }

    #[test]
    fn progressions() {
        assert_eq!(is_arithmetic_progression(&set(&[1, 3, 5, 7])).unwrap(), Some(2));
        assert_eq!(is_arithmetic_progression(&set(&[0, 1, 2, 4])).unwrap(), None);
        assert_eq!(is_arithmetic_progression(&set(&[5, 10])).unwrap(), Some(5));
        assert_eq!(is_arithmetic_progression(&set(&[5])), Err(Error::Degenerate));
    }

    #[test]
    fn odd_progression_scaled() {
        let c = covered(&[3, 9, 15, 21], 2);
        assert_eq!(c.matched_family, Some(ExtremalFamily::OddAp { k: 4, d: 3 }));
        assert_eq!(c.theorem, InverseClaim::T2_2);
        assert!(c.equality && c.consistent);
        assert_eq!((c.cardinality, c.bound), (12, 12));
    }

    #[test]
    fn sum_closed_triple() {
        let c = covered(&[2, 5, 7], 3);
        assert_eq!(c.matched_family, Some(ExtremalFamily::SumClosed3 { a0: 2, a1: 5 }));
        assert_eq!(c.theorem, InverseClaim::T2_3);
        assert!(c.equality && c.consistent);
    }

    #[test]
    fn non_extremal_set() {
        let c = covered(&[1, 2, 4], 2);
        assert_eq!((c.cardinality, c.bound), (10, 8));
        assert!(!c.equality);
        assert_eq!(c.matched_family, None);
        assert!(c.consistent);
    }

    #[test]
    fn special_quadruple() {
        let c = covered(&[0, 2, 4, 8], 3);
        assert_eq!(c.matched_family, Some(ExtremalFamily::Special0124 { d: 2 }));
        assert_eq!(c.theorem, InverseClaim::T3_5);
        assert!(c.equality && c.consistent);
    }

    #[test]
    fn small_k_exceptions() {
        let c = covered(&[4, 9], 2);
        assert_eq!(c.matched_family, Some(ExtremalFamily::Pair { a0: 4, a1: 9 }));
        assert!(c.consistent);
        let c = covered(&[0, 3, 5], 3);
        assert_eq!(c.matched_family, Some(ExtremalFamily::ZeroTriple { a1: 3, a2: 5 }));
        assert!(c.equality);
        let c = covered(&[0, 2, 3, 5], 4);
        assert_eq!(c.matched_family, Some(ExtremalFamily::SumClosed4 { a1: 2, a2: 3 }));
        assert!(c.equality && c.consistent);
        let c = covered(&[0, 7], 2);
        assert_eq!(c.matched_family, Some(ExtremalFamily::Interval0K { k: 2, d: 7 }));
    }

    #[test]
    fn coverage_routing() {
        assert!(matches!(
            classify_extremal(&set(&[1, 2, 3, 4, 5, 6, 7]), 4).unwrap(),
            Classification::NotCovered { k: 7, h: 4, .. }
        ));
        assert!(classify_extremal(&set(&[3, 5]), 1).unwrap().covered().is_none());
        assert_eq!(covered(&[1, 3, 5, 7, 9], 3).theorem, InverseClaim::T2_4);
        assert_eq!(covered(&[0, 1, 2, 3, 4], 3).theorem, InverseClaim::T3_4);
        assert_eq!(covered(&[0, 1, 2, 3, 4], 5).theorem, InverseClaim::T3_3);
        assert!(matches!(classify_extremal(&set(&[-2, 1]), 2), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn conjecture_counterexample() {
        let c = classify_against(&set(&[0, 1, 2, 4, 6]), 4, InverseClaim::C3_2).unwrap();
        assert!(c.equality);
        assert_eq!(c.matched_family, None);
        assert!(!c.consistent);
        let c = classify_against(&set(&[0, 1, 2, 3, 4]), 4, InverseClaim::C3_2).unwrap();
        assert!(c.equality && c.consistent);
        assert!(classify_against(&set(&[0, 1, 2, 3, 4]), 4, InverseClaim::C2_2).is_err());
    }

    #[test]
    fn detect_rejects_near_misses() {
        assert_eq!(detect_shape(&set(&[1, 3, 5, 8]), Shape::OddAp), None);
        assert_eq!(detect_shape(&set(&[2, 4, 6]), Shape::OddAp), None);
        assert_eq!(detect_shape(&set(&[1, 2, 4]), Shape::SumClosed3), None);
        assert_eq!(detect_shape(&set(&[0, 1, 2, 5]), Shape::Special0124), None);
        assert_eq!(detect_shape(&set(&[1, 2, 3]), Shape::Interval0K), None);
    }

    #[test]
    fn classification_json() {
        let c = covered(&[3, 9, 15, 21], 2);
        let v = serde_json::to_value(&c).unwrap();
        assert_eq!(v["family"], "OddAP");
        assert_eq!(v["params"], serde_json::json!({"d": 3, "k": 4}));
        assert_eq!(v["theorem"], "T2_2");
        let back: ExtremalClassification = serde_json::from_value(v).unwrap();
        assert_eq!(back, c);
        let none = serde_json::to_value(covered(&[1, 2, 4], 2)).unwrap();
        assert_eq!(none["family"], serde_json::Value::Null);
        assert_eq!(none["params"], serde_json::Value::Null);
    }
}
