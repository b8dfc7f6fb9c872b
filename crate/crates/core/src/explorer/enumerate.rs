use crate::bounds::SetFamily;
use crate::error::{Error, Result};
use crate::set::{gcd, FiniteIntSet};

/// Lexicographic `r`-subsets of `[lo, hi]`.
#[derive(Debug, Clone)]
pub(crate) struct Combinations {
    hi: i64,
    current: Option<Vec<i64>>,
}

impl Combinations {
    pub fn new(r: usize, lo: i64, hi: i64) -> Self {
        let fits = hi - lo + 1 >= r as i64;
        Combinations {
            hi,
            current: fits.then(|| (0..r as i64).map(|i| lo + i).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        let r = next.len();
        // Rightmost position that can still move up.
        if let Some(p) = (0..r).rev().find(|&p| next[p] < self.hi - (r - 1 - p) as i64) {
            next[p] += 1;
            for q in p + 1..r {
                next[q] = next[q - 1] + 1;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Number of elements chosen from `[1, max_element]`.
pub(crate) fn free_slots(k: usize, family: SetFamily) -> usize {
    match family {
        SetFamily::Positive => k,
        SetFamily::ContainsZero => k.saturating_sub(1),
    }
}

pub(crate) fn check_space(k: usize, max_element: i64, family: SetFamily) -> Result<()> {
    let free = free_slots(k, family);
    let empty = match family {
        SetFamily::Positive => k == 0,
        SetFamily::ContainsZero => k < 2,
    } || max_element < free as i64;
    if empty {
        return Err(Error::EmptySpace(format!(
            "no {family} sets with k = {k} and max_element = {max_element}"
        )));
    }
    Ok(())
}

fn has_unit_gcd(free: &[i64]) -> bool {
    free.iter().fold(0u64, |g, &x| gcd(g, x as u64)) == 1
}

pub(crate) fn assemble(family: SetFamily, free: &[i64]) -> FiniteIntSet {
    let mut elements = Vec::with_capacity(free.len() + 1);
    if family == SetFamily::ContainsZero {
        elements.push(0);
    }
    elements.extend_from_slice(free);
    FiniteIntSet::from_sorted_unchecked(elements)
}

/// Every gcd-normalized set of the family in lexicographic order.
pub fn enumerate_normalized_sets(
    k: usize,
    max_element: i64,
    family: SetFamily,
) -> Result<impl Iterator<Item = FiniteIntSet>> {
    check_space(k, max_element, family)?;
    Ok(Combinations::new(free_slots(k, family), 1, max_element)
        .filter(|free| has_unit_gcd(free))
        .map(move |free| assemble(family, &free)))
}

/// The prefix blocks a scan is partitioned into: every lexicographic choice
/// of the first `min(2, free)` free elements.
pub(crate) fn prefix_blocks(k: usize, max_element: i64, family: SetFamily) -> Vec<Vec<i64>> {
    let free = free_slots(k, family);
    Combinations::new(free.min(2), 1, max_element).collect()
}

/// The normalized sets inside one prefix block, in lexicographic order.
pub(crate) fn block_sets(
    prefix: &[i64],
    k: usize,
    max_element: i64,
    family: SetFamily,
) -> impl Iterator<Item = FiniteIntSet> + '_ {
    let rest = free_slots(k, family) - prefix.len();
    let start = prefix.last().map_or(1, |&x| x + 1);
    Combinations::new(rest, start, max_element).filter_map(move |tail| {
        let mut free = prefix.to_vec();
        free.extend(tail);
        has_unit_gcd(&free).then(|| assemble(family, &free))
    })
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn binomial(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Closed-form size of the normalized space:
/// `Σ_d μ(d) · C(⌊max/d⌋, free)`.
pub fn normalized_set_count(k: usize, max_element: i64, family: SetFamily) -> Result<u64> {
    check_space(k, max_element, family)?;
    let free = free_slots(k, family) as u64;
    let max = max_element as u64;
    let total: i128 = (1..=max)
        .map(|d| mobius(d) as i128 * binomial(max / d, free) as i128)
        .sum();
    Ok(total as u64)
}
