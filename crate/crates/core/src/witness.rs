//! Explicit elements of `h^±A` that certify the lower bounds, and generators
//! for the extremal set families.
//!
//! A [`WitnessFamily`] is a list of labeled values with the ordering claimed
//! between consecutive records (`<`, `=`, or a chain break). Records marked
//! `anchor` belong to another family and are repeated only to pin a chain to
//! its neighbours; they are not counted toward the family's distinct values.
//!
//! With `A = {a_0 < ... < a_{k-1}}`:
//!
//! * `s[i,j]` (i < k-h, j <= h) is `a_i + ... + a_{i+h}` without `a_{i+h-j}`,
//!   and `s[k-h,0]` is the sum of the `h` largest elements.
//! * `t[i,j]` (i < h, j < h-i) negates `a_0, ..., a_{h-i-1}` except `a_j`,
//!   and adds `a_{h-i}, ..., a_{h-1}`.
//! * `u[j]` (1 <= j < k, fold `k`) is `a_0 + a_j - Σ_{l >= 1, l != j} a_l`.
//! * `x[j]` (superincreasing sets) is `s[0,j] - 2 a_0`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kernel::sumset_layered;
use crate::set::{FiniteIntSet, SumsetKind, SumsetResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    S,
    T,
    U,
    X,
}

impl Tag {
    fn letter(self) -> char {
        match self {
            Tag::S => 's',
            Tag::T => 't',
            Tag::U => 'u',
            Tag::X => 'x',
        }
    }
}

/// Identifies one witness element, e.g. `s[0,2]`, `-t[1,0]`, `u[3]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub tag: Tag,
    pub i: Option<usize>,
    pub j: usize,
    pub negated: bool,
}

impl Label {
    fn pair(tag: Tag, i: usize, j: usize) -> Self {
        Label { tag, i: Some(i), j, negated: false }
    }

    fn single(tag: Tag, j: usize) -> Self {
        Label { tag, i: None, j, negated: false }
    }

    fn neg(self) -> Self {
        Label { negated: !self.negated, ..self }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        match self.i {
            Some(i) => write!(f, "{}[{},{}]", self.tag.letter(), i, self.j),
            None => write!(f, "{}[{}]", self.tag.letter(), self.j),
        }
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            literal: s.to_string(),
            reason: "expected a witness label such as s[0,1] or -u[2]".into(),
        };
        let (negated, rest) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let mut chars = rest.chars();
        let tag = match chars.next() {
            Some('s') => Tag::S,
            Some('t') => Tag::T,
            Some('u') => Tag::U,
            Some('x') => Tag::X,
            _ => return Err(bad()),
        };
        let inner = chars
            .as_str()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let nums: Vec<usize> = inner
            .split(',')
            .map(|n| n.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let (i, j) = match nums[..] {
            [j] => (None, j),
            [i, j] => (Some(i), j),
            _ => return Err(bad()),
        };
        Ok(Label { tag, i, j, negated })
    }
}

impl Serialize for Label {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Label {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "=")]
    Equal,
}

impl Relation {
    fn holds(self, left: i64, right: i64) -> bool {
        match self {
            Relation::Less => left < right,
            Relation::Equal => left == right,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Less => "<",
            Relation::Equal => "=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub label: Label,
    pub value: i64,
    /// Claimed relation to the next record; `None` ends a chain.
    pub relation_to_next: Option<Relation>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub anchor: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    S,
    T,
    U,
}

/// Which chain shape `t_family` should claim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TVariant {
    /// `0 < a_0`: every link is strict.
    Positive,
    /// `a_0 = 0`: row boundaries and the lower anchor collapse to equalities.
    ZeroInA,
    /// Positive and superincreasing: also emit the extra elements available
    /// for such sets as a separate labeled sub-family.
    Superincreasing,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFamily {
    pub kind: WitnessKind,
    /// The fold of the sumset every record belongs to.
    pub fold: usize,
    pub records: Vec<WitnessRecord>,
    /// Number of distinct non-anchor values the construction produces.
    pub expected_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainViolation {
    pub left: Label,
    pub right: Label,
    pub claimed: Relation,
    pub left_value: i64,
    pub right_value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessVerdict {
    pub chain_ok: bool,
    pub violations: Vec<ChainViolation>,
    pub distinct_count: usize,
    pub expected_count: usize,
    pub count_ok: bool,
    /// Labels whose value is missing from the computed sumset.
    pub not_in_sumset: Vec<Label>,
}

impl WitnessVerdict {
    pub fn is_sound(&self) -> bool {
        self.chain_ok && self.count_ok && self.not_in_sumset.is_empty()
    }
}

impl WitnessFamily {
    pub fn chain_violations(&self) -> Vec<ChainViolation> {
        self.records
            .windows(2)
            .filter_map(|w| {
                let rel = w[0].relation_to_next?;
                (!rel.holds(w[0].value, w[1].value)).then(|| ChainViolation {
                    left: w[0].label,
                    right: w[1].label,
                    claimed: rel,
                    left_value: w[0].value,
                    right_value: w[1].value,
                })
            })
            .collect()
    }

    pub fn member_values(&self) -> BTreeSet<i64> {
        self.records
            .iter()
            .filter(|r| !r.anchor)
            .map(|r| r.value)
            .collect()
    }

    pub fn all_values(&self) -> BTreeSet<i64> {
        self.records.iter().map(|r| r.value).collect()
    }

    /// Member values outside `known`.
    pub fn novel_count(&self, known: &BTreeSet<i64>) -> usize {
        self.member_values().difference(known).count()
    }

    pub fn value_of(&self, label: Label) -> Option<i64> {
        self.records.iter().find(|r| r.label == label).map(|r| r.value)
    }

    pub fn verify_against(&self, sumset: &SumsetResult) -> WitnessVerdict {
        let violations = self.chain_violations();
        let distinct_count = self.member_values().len();
        WitnessVerdict {
            chain_ok: violations.is_empty(),
            violations,
            distinct_count,
            expected_count: self.expected_count,
            count_ok: distinct_count == self.expected_count,
            not_in_sumset: self
                .records
                .iter()
                .filter(|r| !sumset.contains(r.value))
                .map(|r| r.label)
                .collect(),
        }
    }

    /// Checks chains, the distinct count, and membership in `fold^±A`.
    pub fn verify(&self, set: &FiniteIntSet) -> Result<WitnessVerdict> {
        let sumset = sumset_layered(set, self.fold, SumsetKind::RestrictedSigned)?;
        Ok(self.verify_against(&sumset))
    }

    /// The dump format: a JSON array of records.
    pub fn dump_json(&self) -> String {
        serde_json::to_string_pretty(&self.records).expect("records serialize")
    }
}

fn binom(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn a(set: &FiniteIntSet, i: usize) -> i64 {
    set.elements()[i]
}

fn check_fold(set: &FiniteIntSet, h: usize) -> Result<()> {
    SumsetKind::RestrictedSigned.check_fold(set.len(), h)?;
    set.check_magnitude(h)
}

fn s_value(set: &FiniteIntSet, h: usize, i: usize, j: usize) -> i64 {
    (0..=h).filter(|&l| l != h - j).map(|l| a(set, i + l)).sum()
}

fn s_last(set: &FiniteIntSet, h: usize) -> i64 {
    let k = set.len();
    set.elements()[k - h..].iter().sum()
}

fn t_value(set: &FiniteIntSet, h: usize, i: usize, j: usize) -> i64 {
    let negated: i64 = (0..h - i).filter(|&l| l != j).map(|l| a(set, l)).sum();
    let lifted: i64 = (1..=i).map(|m| a(set, h - m)).sum();
    -negated + a(set, j) + lifted
}

fn u_value(set: &FiniteIntSet, j: usize) -> i64 {
    let k = set.len();
    let rest: i64 = (1..k).filter(|&l| l != j).map(|l| a(set, l)).sum();
    a(set, 0) + a(set, j) - rest
}

struct ChainBuilder {
    records: Vec<WitnessRecord>,
}

impl ChainBuilder {
    fn new() -> Self {
        ChainBuilder { records: Vec::new() }
    }

    fn push(&mut self, label: Label, value: i64, anchor: bool) {
        self.records.push(WitnessRecord {
            label,
            value,
            relation_to_next: None,
            anchor,
        });
    }

    /// Sets the relation from the last pushed record to the next one.
    fn then(&mut self, rel: Relation) {
        if let Some(last) = self.records.last_mut() {
            last.relation_to_next = Some(rel);
        }
    }

    fn chain(&mut self, links: &[(Label, i64, bool)], rel: Relation) {
        for (n, &(label, value, anchor)) in links.iter().enumerate() {
            if n > 0 {
                self.then(rel);
            }
            self.push(label, value, anchor);
        }
    }
}

/// The sums of `h` distinct elements forming the strictly increasing chain
/// from `a_0 + ... + a_{h-1}` to the sum of the `h` largest elements.
///
/// Accepts nonnegative sets; the chain only needs distinct elements.
pub fn s_family(set: &FiniteIntSet, h: usize) -> Result<WitnessFamily> {
    if set.min() < 0 {
        return Err(Error::DomainViolation(format!(
            "s-family needs nonnegative elements, got {set}"
        )));
    }
    check_fold(set, h)?;
    let k = set.len();
    let mut b = ChainBuilder::new();
    for i in 0..k - h {
        for j in 0..=h {
            if i > 0 || j > 0 {
                b.then(if j == 0 { Relation::Equal } else { Relation::Less });
            }
            b.push(Label::pair(Tag::S, i, j), s_value(set, h, i, j), false);
        }
    }
    if k > h {
        b.then(Relation::Equal);
    }
    b.push(Label::pair(Tag::S, k - h, 0), s_last(set, h), false);
    Ok(WitnessFamily {
        kind: WitnessKind::S,
        fold: h,
        records: b.records,
        expected_count: h * k - h * h + 1,
    })
}

fn is_superincreasing_slice(v: &[i64]) -> bool {
    let mut prefix: i128 = 0;
    for (i, &x) in v.iter().enumerate() {
        if (i == 0 && x <= 0) || (i > 0 && (x as i128) <= prefix) {
            return false;
        }
        prefix += x as i128;
    }
    true
}

pub fn is_superincreasing(set: &FiniteIntSet) -> bool {
    is_superincreasing_slice(set.elements())
}

/// The mixed-sign chain between `-s[0,0]` and `s[0,0]`.
pub fn t_family(set: &FiniteIntSet, h: usize, variant: TVariant) -> Result<WitnessFamily> {
    let zero = variant == TVariant::ZeroInA;
    match variant {
        TVariant::ZeroInA if set.min() != 0 => {
            return Err(Error::DomainViolation(format!(
                "zero-in-A chain needs a nonnegative set with a_0 = 0, got {set}"
            )))
        }
        TVariant::Positive | TVariant::Superincreasing if !set.is_positive() => {
            return Err(Error::DomainViolation(format!(
                "positive chain needs strictly positive elements, got {set}"
            )))
        }
        _ => {}
    }
    check_fold(set, h)?;
    let boundary = if zero { Relation::Equal } else { Relation::Less };
    let s00 = s_value_or_last(set, h);
    let mut b = ChainBuilder::new();
    b.push(Label::pair(Tag::S, 0, 0).neg(), -s00, true);
    for i in 0..h {
        for j in 0..h - i {
            b.then(if j > 0 { Relation::Less } else { boundary });
            b.push(Label::pair(Tag::T, i, j), t_value(set, h, i, j), false);
        }
    }
    b.then(Relation::Equal);
    b.push(Label::pair(Tag::S, 0, 0), s00, true);
    let mut expected_count = if zero { binom(h, 2) + 1 } else { binom(h + 1, 2) };

    if variant == TVariant::Superincreasing {
        expected_count += superincreasing_extras(&mut b, set, h)?;
    }
    Ok(WitnessFamily {
        kind: WitnessKind::T,
        fold: h,
        records: b.records,
        expected_count,
    })
}

/// `s[0,0]`, which for `h = k` is the sum of all elements.
fn s_value_or_last(set: &FiniteIntSet, h: usize) -> i64 {
    if set.len() > h {
        s_value(set, h, 0, 0)
    } else {
        s_last(set, h)
    }
}

/// Appends the extra chains available for superincreasing sets and returns
/// how many new member values they claim.
fn superincreasing_extras(b: &mut ChainBuilder, set: &FiniteIntSet, h: usize) -> Result<usize> {
    let k = set.len();
    if !is_superincreasing(set) {
        return Err(Error::DomainViolation(format!("{set} is not superincreasing")));
    }
    if h < 3 || h + 1 > k {
        return Err(Error::InvalidFold {
            h,
            k,
            kind: SumsetKind::RestrictedSigned,
        });
    }
    let s = |j: usize| (Label::pair(Tag::S, 0, j), s_value(set, h, 0, j));
    let t = |i: usize, j: usize| (Label::pair(Tag::T, i, j), t_value(set, h, i, j));
    let mut claimed = 0;

    // s[0,j-1] < x[j] < s[0,j] and the mirrored chain.
    for j in 1..=h - 2 {
        let (lo_label, lo) = s(j - 1);
        let (hi_label, hi) = s(j);
        let x = Label::single(Tag::X, j);
        let xv = hi - 2 * a(set, 0);
        b.chain(&[(lo_label, lo, true), (x, xv, false), (hi_label, hi, true)], Relation::Less);
        b.chain(
            &[(hi_label.neg(), -hi, true), (x.neg(), -xv, false), (lo_label.neg(), -lo, true)],
            Relation::Less,
        );
        claimed += 2;
    }

    // t[0,h-j-1] < -t[j,h-j-2] < ... < -t[j,0] < -t[j-1,h-j] < t[0,h-j]
    for j in 2..=h.saturating_sub(3) {
        let mut links = vec![{
            let (l, v) = t(0, h - j - 1);
            (l, v, true)
        }];
        for q in (0..=h - j - 2).rev() {
            let (l, v) = t(j, q);
            links.push((l.neg(), -v, false));
        }
        let (l, v) = t(j - 1, h - j);
        links.push((l.neg(), -v, false));
        let (l, v) = t(0, h - j);
        links.push((l, v, true));
        claimed += links.len() - 2;
        b.chain(&links, Relation::Less);
    }

    // t[0,1] < -t[h-3,2] < t[0,2]
    let (l1, v1) = t(0, 1);
    let (lm, vm) = t(h - 3, 2);
    let (l2, v2) = t(0, 2);
    b.chain(&[(l1, v1, true), (lm.neg(), -vm, false), (l2, v2, true)], Relation::Less);
    claimed += 1;
    Ok(claimed)
}

/// The `h = k` chain `t[0,1] < u[1] < ... < u[k-1] = t[1,0]` for a positive set.
pub fn u_family(set: &FiniteIntSet) -> Result<WitnessFamily> {
    if !set.is_positive() {
        return Err(Error::DomainViolation(format!(
            "u-family needs strictly positive elements, got {set}"
        )));
    }
    let k = set.len();
    if k < 3 {
        return Err(Error::DomainViolation(format!("u-family needs k >= 3, got {set}")));
    }
    check_fold(set, k)?;
    let mut b = ChainBuilder::new();
    b.push(Label::pair(Tag::T, 0, 1), t_value(set, k, 0, 1), true);
    for j in 1..k {
        b.then(Relation::Less);
        b.push(Label::single(Tag::U, j), u_value(set, j), false);
    }
    b.then(Relation::Equal);
    b.push(Label::pair(Tag::T, 1, 0), t_value(set, k, 1, 0), true);
    Ok(WitnessFamily {
        kind: WitnessKind::U,
        fold: k,
        records: b.records,
        expected_count: k - 1,
    })
}

/// `|s ∪ -s ∪ t|` as a set of values: the number of elements of `h^±A` the
/// s- and t-families certify together.
pub fn certified_count(set: &FiniteIntSet, h: usize) -> Result<usize> {
    let variant = if set.min() == 0 {
        TVariant::ZeroInA
    } else {
        TVariant::Positive
    };
    let s = s_family(set, h)?;
    let t = t_family(set, h, variant)?;
    let mut values = s.all_values();
    values.extend(s.all_values().iter().map(|v| -v));
    values.extend(t.all_values());
    Ok(values.len())
}

/// Extremal set families with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtremalFamily {
    /// `d * {1, 3, ..., 2k-1}`
    OddAp { k: usize, d: i64 },
    /// `d * [1, k]`
    Interval1K { k: usize, d: i64 },
    /// `d * [0, k-1]`
    Interval0K { k: usize, d: i64 },
    /// `d * {0, 1, 2, 4}`
    Special0124 { d: i64 },
    /// `{a_0, a_1, a_0 + a_1}` with `0 < a_0 < a_1`
    SumClosed3 { a0: i64, a1: i64 },
    /// `{0, a_1, a_2, a_1 + a_2}` with `0 < a_1 < a_2`
    SumClosed4 { a1: i64, a2: i64 },
    /// Any `{a_0, a_1}` with `0 < a_0 < a_1`
    Pair { a0: i64, a1: i64 },
    /// Any `{0, a_1, a_2}` with `0 < a_1 < a_2`
    ZeroTriple { a1: i64, a2: i64 },
}

impl ExtremalFamily {
    pub fn name(&self) -> &'static str {
        match self {
            ExtremalFamily::OddAp { .. } => "OddAP",
            ExtremalFamily::Interval1K { .. } => "Interval1K",
            ExtremalFamily::Interval0K { .. } => "Interval0K",
            ExtremalFamily::Special0124 { .. } => "Special0124",
            ExtremalFamily::SumClosed3 { .. } => "SumClosed3",
            ExtremalFamily::SumClosed4 { .. } => "SumClosed4",
            ExtremalFamily::Pair { .. } => "Pair",
            ExtremalFamily::ZeroTriple { .. } => "ZeroTriple",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, i64)> {
        match *self {
            ExtremalFamily::OddAp { k, d }
            | ExtremalFamily::Interval1K { k, d }
            | ExtremalFamily::Interval0K { k, d } => vec![("k", k as i64), ("d", d)],
            ExtremalFamily::Special0124 { d } => vec![("d", d)],
            ExtremalFamily::SumClosed3 { a0, a1 } | ExtremalFamily::Pair { a0, a1 } => {
                vec![("a0", a0), ("a1", a1)]
            }
            ExtremalFamily::SumClosed4 { a1, a2 } | ExtremalFamily::ZeroTriple { a1, a2 } => {
                vec![("a1", a1), ("a2", a2)]
            }
        }
    }

    /// Inverse of [`name`](Self::name) and [`params`](Self::params).
    pub fn from_parts(name: &str, params: &[(String, i64)]) -> Result<Self> {
        let get = |key: &str| {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::InvalidFamily(format!("{name} is missing parameter {key}")))
        };
        let k = || -> Result<usize> {
            usize::try_from(get("k")?).map_err(|_| Error::InvalidFamily("negative k".into()))
        };
        Ok(match name {
            "OddAP" => ExtremalFamily::OddAp { k: k()?, d: get("d")? },
            "Interval1K" => ExtremalFamily::Interval1K { k: k()?, d: get("d")? },
            "Interval0K" => ExtremalFamily::Interval0K { k: k()?, d: get("d")? },
            "Special0124" => ExtremalFamily::Special0124 { d: get("d")? },
            "SumClosed3" => ExtremalFamily::SumClosed3 { a0: get("a0")?, a1: get("a1")? },
            "SumClosed4" => ExtremalFamily::SumClosed4 { a1: get("a1")?, a2: get("a2")? },
            "Pair" => ExtremalFamily::Pair { a0: get("a0")?, a1: get("a1")? },
            "ZeroTriple" => ExtremalFamily::ZeroTriple { a1: get("a1")?, a2: get("a2")? },
            other => return Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        })
    }

    /// The same family member dilated by `factor > 0`.
    pub fn scaled(&self, factor: i64) -> Self {
        match *self {
            ExtremalFamily::OddAp { k, d } => ExtremalFamily::OddAp { k, d: d * factor },
            ExtremalFamily::Interval1K { k, d } => ExtremalFamily::Interval1K { k, d: d * factor },
            ExtremalFamily::Interval0K { k, d } => ExtremalFamily::Interval0K { k, d: d * factor },
            ExtremalFamily::Special0124 { d } => ExtremalFamily::Special0124 { d: d * factor },
            ExtremalFamily::SumClosed3 { a0, a1 } => ExtremalFamily::SumClosed3 {
                a0: a0 * factor,
                a1: a1 * factor,
            },
            ExtremalFamily::SumClosed4 { a1, a2 } => ExtremalFamily::SumClosed4 {
                a1: a1 * factor,
                a2: a2 * factor,
            },
            ExtremalFamily::Pair { a0, a1 } => ExtremalFamily::Pair {
                a0: a0 * factor,
                a1: a1 * factor,
            },
            ExtremalFamily::ZeroTriple { a1, a2 } => ExtremalFamily::ZeroTriple {
                a1: a1 * factor,
                a2: a2 * factor,
            },
        }
    }
}

impl fmt::Display for ExtremalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.name())?;
        for (n, (key, value)) in self.params().iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{key}={value}")?;
        }
        f.write_str(")")
    }
}

fn scaled_set(d: i64, base: impl IntoIterator<Item = i64>) -> Result<FiniteIntSet> {
    let raw = base
        .into_iter()
        .map(|b| {
            b.checked_mul(d)
                .ok_or_else(|| Error::InvalidFamily(format!("{d} * {b} overflows i64")))
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteIntSet::new(&raw)
}

/// Materializes a family member.
pub fn gen_family(family: &ExtremalFamily) -> Result<FiniteIntSet> {
    let invalid = |why: &str| Err(Error::InvalidFamily(format!("{family}: {why}")));
    match *family {
        ExtremalFamily::OddAp { d, .. }
        | ExtremalFamily::Interval1K { d, .. }
        | ExtremalFamily::Interval0K { d, .. }
        | ExtremalFamily::Special0124 { d }
            if d < 1 =>
        {
            invalid("scale d must be at least 1")
        }
        ExtremalFamily::OddAp { k, d } => {
            if k < 2 {
                return invalid("needs k >= 2");
            }
            scaled_set(d, (0..k as i64).map(|i| 2 * i + 1))
        }
        ExtremalFamily::Interval1K { k, d } => {
            if k < 3 {
                return invalid("needs k >= 3");
            }
            scaled_set(d, 1..=k as i64)
        }
        ExtremalFamily::Interval0K { k, d } => {
            if k < 2 {
                return invalid("needs k >= 2");
            }
            scaled_set(d, 0..k as i64)
        }
        ExtremalFamily::Special0124 { d } => scaled_set(d, [0, 1, 2, 4]),
        ExtremalFamily::SumClosed3 { a0, a1 } => {
            if !(0 < a0 && a0 < a1) {
                return invalid("needs 0 < a0 < a1");
            }
            let top = a0.checked_add(a1).ok_or(Error::InvalidFamily("a0 + a1 overflows".into()))?;
            FiniteIntSet::new(&[a0, a1, top])
        }
        ExtremalFamily::SumClosed4 { a1, a2 } => {
            if !(0 < a1 && a1 < a2) {
                return invalid("needs 0 < a1 < a2");
            }
            let top = a1.checked_add(a2).ok_or(Error::InvalidFamily("a1 + a2 overflows".into()))?;
            FiniteIntSet::new(&[0, a1, a2, top])
        }
        ExtremalFamily::Pair { a0, a1 } => {
            if !(0 < a0 && a0 < a1) {
                return invalid("needs 0 < a0 < a1");
            }
            FiniteIntSet::new(&[a0, a1])
        }
        ExtremalFamily::ZeroTriple { a1, a2 } => {
            if !(0 < a1 && a1 < a2) {
                return invalid("needs 0 < a1 < a2");
            }
            FiniteIntSet::new(&[0, a1, a2])
        }
    }
}

/// How the terms after the base are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Schedule {
    /// Each term is one more than the sum of all earlier terms.
    MinimalExcess,
    /// Each term is `ratio` times the previous one.
    Geometric(i64),
    /// The `k - 1` terms after the base, verbatim.
    Explicit(Vec<i64>),
}

/// A set with `a_0 = base` and every later element exceeding the sum of all
/// earlier ones.
pub fn gen_superincreasing(k: usize, base: i64, schedule: &Schedule) -> Result<FiniteIntSet> {
    if k < 1 {
        return Err(Error::InvalidFamily("superincreasing sets need k >= 1".into()));
    }
    if base <= 0 {
        return Err(Error::InvalidFamily(format!("base must be positive, got {base}")));
    }
    let overflow = || Error::InvalidFamily("superincreasing term overflows i64".into());
    let mut terms = vec![base];
    match schedule {
        Schedule::MinimalExcess => {
            let mut sum = base;
            for _ in 1..k {
                let next = sum.checked_add(1).ok_or_else(overflow)?;
                terms.push(next);
                sum = sum.checked_add(next).ok_or_else(overflow)?;
            }
        }
        Schedule::Geometric(ratio) => {
            for _ in 1..k {
                let next = terms.last().unwrap().checked_mul(*ratio).ok_or_else(overflow)?;
                terms.push(next);
            }
        }
        Schedule::Explicit(rest) => {
            if rest.len() != k - 1 {
                return Err(Error::InvalidFamily(format!(
                    "explicit schedule has {} terms, expected {}",
                    rest.len(),
                    k - 1
                )));
            }
            terms.extend_from_slice(rest);
        }
    }
    if !is_superincreasing_slice(&terms) {
        return Err(Error::InvalidFamily(format!("{terms:?} is not superincreasing")));
    }
    Ok(FiniteIntSet::from_sorted_unchecked(terms))
}
