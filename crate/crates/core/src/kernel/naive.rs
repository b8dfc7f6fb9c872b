use std::collections::BTreeSet;

use super::coefficients::enumerate_coefficients;
use super::{Engine, KernelStats};
use crate::error::Result;
use crate::set::{FiniteIntSet, SumsetKind, SumsetResult};

/// Reference engine: evaluates `Σ λ_i a_i` for every admissible coefficient
/// vector and accumulates the distinct values.
pub fn sumset_naive(set: &FiniteIntSet, h: usize, kind: SumsetKind) -> Result<SumsetResult> {
    sumset_naive_with_stats(set, h, kind).map(|(r, _)| r)
}

pub fn sumset_naive_with_stats(
    set: &FiniteIntSet,
    h: usize,
    kind: SumsetKind,
) -> Result<(SumsetResult, KernelStats)> {
    set.check_magnitude(h)?;
    let mut values = BTreeSet::new();
    let mut vectors = 0u64;
    for lambda in enumerate_coefficients(set.len(), h, kind)? {
        values.insert(lambda.evaluate(set));
        vectors += 1;
    }
    let values: Vec<i64> = values.into_iter().collect();
    let stats = KernelStats::describe(Engine::Naive, Some(vectors), &values);
    Ok((
        SumsetResult {
            values,
            kind,
            h,
            source_k: set.len(),
        },
        stats,
    ))
}
