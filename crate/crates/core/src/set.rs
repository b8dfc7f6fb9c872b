//! Finite integer sets, the four sumset notions, and elementary set transformations.
//!
//! A [`FiniteIntSet`] is always stored as a strictly increasing vector. Its
//! canonical text form is the set literal used throughout the CLI and the
//! report files: ascending decimal integers joined by commas, with no
//! whitespace (`1,3,5,7`).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest admissible value of `h * max|a|`.
pub const MAGNITUDE_LIMIT: u128 = 1 << 62;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteIntSet {
    elements: Vec<i64>,
}

impl FiniteIntSet {
    /// Sorts and deduplicates `raw`.
    pub fn new(raw: &[i64]) -> Result<Self> {
        make_set(raw).map(|(set, _)| set)
    }

    /// Wraps a vector already known to be strictly increasing and nonempty.
    pub(crate) fn from_sorted_unchecked(elements: Vec<i64>) -> Self {
        debug_assert!(!elements.is_empty());
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        FiniteIntSet { elements }
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    /// Cardinality `k`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> i64 {
        self.elements[0]
    }

    pub fn max(&self) -> i64 {
        self.elements[self.elements.len() - 1]
    }

    pub fn max_abs(&self) -> u64 {
        self.min().unsigned_abs().max(self.max().unsigned_abs())
    }

    pub fn contains(&self, v: i64) -> bool {
        self.elements.binary_search(&v).is_ok()
    }

    pub fn is_positive(&self) -> bool {
        self.min() > 0
    }

    /// Nonnegative with `0` as its least element.
    pub fn contains_zero_as_min(&self) -> bool {
        self.min() == 0
    }

    pub fn negate(&self) -> FiniteIntSet {
        FiniteIntSet {
            elements: self.elements.iter().rev().map(|a| -a).collect(),
        }
    }

    /// Rejects folds whose sums could leave the range `|v| <= 2^62`.
    pub fn check_magnitude(&self, h: usize) -> Result<()> {
        let max_abs = self.max_abs();
        if (h as u128) * (max_abs as u128) > MAGNITUDE_LIMIT {
            return Err(Error::Overflow { h, max_abs });
        }
        Ok(())
    }
}

impl fmt::Display for FiniteIntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_literal(f, &self.elements)
    }
}

impl fmt::Debug for FiniteIntSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

pub(crate) fn write_literal(f: &mut impl fmt::Write, values: &[i64]) -> fmt::Result {
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Parses a set literal. Tokens must be plain decimal integers with an
/// optional leading `-`; whitespace and empty tokens are rejected. Order and
/// duplicates are not enforced here; see [`parse_literal`] for the flag.
impl FromStr for FiniteIntSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_literal(s).map(|(set, _)| set)
    }
}

/// Parses a set literal, also reporting whether it contained duplicates.
pub fn parse_literal(s: &str) -> Result<(FiniteIntSet, bool)> {
    let bad = |reason: &str| Error::Parse {
        literal: s.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(bad("empty literal"));
    }
    let mut raw = Vec::new();
    for token in s.split(',') {
        let digits = token.strip_prefix('-').unwrap_or(token);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(&format!("token {token:?} is not a decimal integer")));
        }
        let v: i64 = token
            .parse()
            .map_err(|_| bad(&format!("token {token:?} does not fit in 64 bits")))?;
        raw.push(v);
    }
    make_set(&raw)
}

impl Serialize for FiniteIntSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FiniteIntSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Builds a set from arbitrary input; the flag reports whether `raw` held
/// duplicates.
pub fn make_set(raw: &[i64]) -> Result<(FiniteIntSet, bool)> {
    if raw.is_empty() {
        return Err(Error::InvalidSet("a set needs at least one element".into()));
    }
    let mut elements = raw.to_vec();
    elements.sort_unstable();
    elements.dedup();
    let had_duplicates = elements.len() != raw.len();
    Ok((FiniteIntSet { elements }, had_duplicates))
}

/// `alpha * A`. Order reverses for negative `alpha`.
pub fn dilate(set: &FiniteIntSet, alpha: i64) -> Result<FiniteIntSet> {
    if alpha == 0 {
        return Err(Error::InvalidDilation);
    }
    let mut elements = set
        .elements
        .iter()
        .map(|&a| {
            a.checked_mul(alpha)
                .ok_or_else(|| Error::DomainViolation(format!("{alpha} * {a} overflows i64")))
        })
        .collect::<Result<Vec<_>>>()?;
    if alpha < 0 {
        elements.reverse();
    }
    Ok(FiniteIntSet { elements })
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Splits a nonnegative set into `(d, A')` with `A = d * A'` and the nonzero
/// elements of `A'` coprime.
pub fn normalize_dilation(set: &FiniteIntSet) -> Result<(u64, FiniteIntSet)> {
    if set.min() < 0 || set.max() == 0 {
        return Err(Error::NotNormalizable(set.to_string()));
    }
    let d = set
        .elements
        .iter()
        .filter(|&&a| a != 0)
        .fold(0, |g, &a| gcd(g, a as u64));
    let elements = set.elements.iter().map(|&a| a / d as i64).collect();
    Ok((d, FiniteIntSet { elements }))
}

/// The four h-fold sumset notions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumsetKind {
    /// `hA`: coefficients in N summing to h.
    Unrestricted,
    /// `h^A`: h distinct elements.
    Restricted,
    /// `h_±A`: integer coefficients with `Σ|λ_i| = h`.
    Signed,
    /// `h^±A`: coefficients in {-1, 0, 1} with `Σ|λ_i| = h`.
    RestrictedSigned,
}

impl SumsetKind {
    pub const ALL: [SumsetKind; 4] = [
        SumsetKind::Unrestricted,
        SumsetKind::Restricted,
        SumsetKind::Signed,
        SumsetKind::RestrictedSigned,
    ];

    pub fn is_restricted(self) -> bool {
        matches!(self, SumsetKind::Restricted | SumsetKind::RestrictedSigned)
    }

    pub fn is_signed(self) -> bool {
        matches!(self, SumsetKind::Signed | SumsetKind::RestrictedSigned)
    }

    /// Largest coefficient magnitude a single element can carry.
    pub(crate) fn max_coefficient(self, h: usize) -> i64 {
        if self.is_restricted() {
            1
        } else {
            h as i64
        }
    }

    pub fn check_fold(self, k: usize, h: usize) -> Result<()> {
        if h == 0 || (self.is_restricted() && h > k) {
            return Err(Error::InvalidFold { h, k, kind: self });
        }
        Ok(())
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SumsetKind::Unrestricted => "unrestricted",
            SumsetKind::Restricted => "restricted",
            SumsetKind::Signed => "signed",
            SumsetKind::RestrictedSigned => "restricted-signed",
        }
    }
}

impl fmt::Display for SumsetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SumsetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SumsetKind::ALL
            .into_iter()
            .find(|kind| kind.as_str() == s)
            .ok_or_else(|| Error::DomainViolation(format!("unknown sumset kind {s:?}")))
    }
}

/// A coefficient tuple `(λ_0, ..., λ_{k-1})`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoefficientVector {
    pub coefficients: Vec<i64>,
}

impl CoefficientVector {
    pub fn weight(&self) -> u64 {
        self.coefficients.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn admissible_for(&self, kind: SumsetKind) -> bool {
        self.coefficients.iter().all(|&c| match kind {
            SumsetKind::Unrestricted => c >= 0,
            SumsetKind::Restricted => c == 0 || c == 1,
            SumsetKind::Signed => true,
            SumsetKind::RestrictedSigned => (-1..=1).contains(&c),
        })
    }

    /// `Σ λ_i a_i`; the caller guarantees the magnitude precondition.
    pub fn evaluate(&self, set: &FiniteIntSet) -> i64 {
        self.coefficients
            .iter()
            .zip(set.elements())
            .map(|(c, a)| c * a)
            .sum()
    }
}

/// A computed sumset: strictly increasing values plus provenance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumsetResult {
    pub values: Vec<i64>,
    pub kind: SumsetKind,
    pub h: usize,
    pub source_k: usize,
}

impl SumsetResult {
    pub fn cardinality(&self) -> usize {
        self.values.len()
    }

    pub fn contains(&self, v: i64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    pub fn is_symmetric(&self) -> bool {
        self.values
            .iter()
            .zip(self.values.iter().rev())
            .all(|(a, b)| *a == -*b)
    }

    pub fn literal(&self) -> String {
        let mut s = String::new();
        write_literal(&mut s, &self.values).expect("writing to a String");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(raw: &[i64]) -> FiniteIntSet {
        FiniteIntSet::new(raw).unwrap()
    }

    #[test]
    fn make_set_sorts_and_flags_duplicates() {
        assert_eq!(make_set(&[5, 1, 3]).unwrap(), (set(&[1, 3, 5]), false));
        assert_eq!(make_set(&[2]).unwrap(), (set(&[2]), false));
        assert_eq!(make_set(&[1, 1, 3]).unwrap(), (set(&[1, 3]), true));
        assert!(matches!(make_set(&[]), Err(Error::InvalidSet(_))));
    }

    #[test]
    fn dilation_examples() {
        assert_eq!(dilate(&set(&[1, 3, 5]), 2).unwrap(), set(&[2, 6, 10]));
        assert_eq!(dilate(&set(&[1, 2]), -1).unwrap().elements(), &[-2, -1]);
        assert_eq!(dilate(&set(&[1, 3]), 1).unwrap(), set(&[1, 3]));
        assert_eq!(dilate(&set(&[1, 3]), 0), Err(Error::InvalidDilation));
        assert!(dilate(&set(&[i64::MAX]), 2).is_err());
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalize_dilation(&set(&[2, 6, 10])).unwrap(), (2, set(&[1, 3, 5])));
        assert_eq!(
            normalize_dilation(&set(&[0, 3, 6, 9])).unwrap(),
            (3, set(&[0, 1, 2, 3]))
        );
        assert_eq!(normalize_dilation(&set(&[1, 4, 9])).unwrap(), (1, set(&[1, 4, 9])));
        assert!(matches!(
            normalize_dilation(&set(&[-1, 2])),
            Err(Error::NotNormalizable(_))
        ));
        assert!(normalize_dilation(&set(&[0])).is_err());
    }

    #[test]
    fn literal_round_trip_and_rejections() {
        let (s, dup) = parse_literal("1,3,5,7").unwrap();
        assert!(!dup);
        assert_eq!(s.to_string(), "1,3,5,7");
        assert_eq!(parse_literal("-3,0,7").unwrap().0.elements(), &[-3, 0, 7]);
        assert!(parse_literal("3,3").unwrap().1);
        for bad in ["", "1,,2", "1, 2", " 1", "a", "1,2,", "-", "+1", "99999999999999999999"] {
            assert!(matches!(parse_literal(bad), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn fold_validity() {
        let kind = SumsetKind::RestrictedSigned;
        assert!(kind.check_fold(3, 3).is_ok());
        assert!(kind.check_fold(3, 4).is_err());
        assert!(kind.check_fold(3, 0).is_err());
        assert!(SumsetKind::Signed.check_fold(3, 7).is_ok());
        assert_eq!("restricted-signed".parse::<SumsetKind>().unwrap(), kind);
    }

    #[test]
    fn magnitude_precondition() {
        let big = set(&[1 << 61]);
        assert!(big.check_magnitude(2).is_ok());
        assert!(matches!(big.check_magnitude(3), Err(Error::Overflow { .. })));
    }

    #[test]
    fn serde_uses_the_literal() {
        let s = set(&[0, 1, 2, 4]);
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"0,1,2,4\"");
        assert_eq!(serde_json::from_str::<FiniteIntSet>(&json).unwrap(), s);
    }
}
