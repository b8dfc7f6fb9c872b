use super::bitset::DenseBits;
use super::{Engine, KernelStats};
use crate::error::{Error, Result};
use crate::set::{FiniteIntSet, SumsetKind, SumsetResult};

/// Upper limit on the bits held across all layers (256 MiB).
pub const LAYERED_BIT_LIMIT: u64 = 1 << 31;

/// Achievable partial sums after consuming `j` weight units, for every
/// `j = 0..=h_max`, over the whole set.
///
/// Layer `j` is a dense bit array over `[-R, R]` with `R = h_max * max|a|`;
/// bit `v + R` is set when `v` is achievable. Elements are folded in one at a
/// time. Each element either contributes nothing or adds `c * a_i` for an
/// admissible coefficient `c`, moving the partial sum from layer `j` to layer
/// `j + |c|`. Layers are swept from the top down so every read sees the state
/// before the current element.
#[derive(Debug, Clone)]
pub struct LayeredTable {
    kind: SumsetKind,
    source_k: usize,
    radius: i64,
    layers: Vec<DenseBits>,
}

impl LayeredTable {
    pub fn build(set: &FiniteIntSet, h_max: usize, kind: SumsetKind) -> Result<Self> {
        kind.check_fold(set.len(), h_max)?;
        set.check_magnitude(h_max)?;
        let radius = h_max as u64 * set.max_abs();
        let cells = 2 * radius + 1;
        let bits = cells.saturating_mul(h_max as u64 + 1);
        if bits > LAYERED_BIT_LIMIT {
            return Err(Error::RangeTooLarge {
                cells: bits,
                limit: LAYERED_BIT_LIMIT,
            });
        }
        let radius = radius as i64;
        let mut layers: Vec<DenseBits> = (0..=h_max).map(|_| DenseBits::new(cells as usize)).collect();
        layers[0].set(radius as usize);

        let max_coefficient = kind.max_coefficient(h_max) as usize;
        let mut top = 0usize;
        for &a in set.elements() {
            for j in (0..=top.min(h_max - 1)).rev() {
                if layers[j].is_clear() {
                    continue;
                }
                let (lower, upper) = layers.split_at_mut(j + 1);
                let source = &lower[j];
                for c in 1..=max_coefficient.min(h_max - j) {
                    let target = &mut upper[c - 1];
                    let step = c as i64 * a;
                    target.or_shifted(source, step);
                    if kind.is_signed() && step != 0 {
                        target.or_shifted(source, -step);
                    }
                }
            }
            top = (top + max_coefficient).min(h_max);
        }
        Ok(LayeredTable {
            kind,
            source_k: set.len(),
            radius,
            layers,
        })
    }

    pub fn h_max(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn cardinality(&self, h: usize) -> usize {
        self.layers[h].count_ones()
    }

    pub fn values(&self, h: usize) -> Vec<i64> {
        self.layers[h]
            .ones()
            .map(|i| i as i64 - self.radius)
            .collect()
    }

    pub fn contains(&self, h: usize, v: i64) -> bool {
        let i = v + self.radius;
        i >= 0 && self.layers[h].get(i as usize)
    }

    pub fn result(&self, h: usize) -> SumsetResult {
        SumsetResult {
            values: self.values(h),
            kind: self.kind,
            h,
            source_k: self.source_k,
        }
    }
}

pub fn sumset_layered(set: &FiniteIntSet, h: usize, kind: SumsetKind) -> Result<SumsetResult> {
    Ok(LayeredTable::build(set, h, kind)?.result(h))
}

pub fn sumset_layered_with_stats(
    set: &FiniteIntSet,
    h: usize,
    kind: SumsetKind,
) -> Result<(SumsetResult, KernelStats)> {
    let result = sumset_layered(set, h, kind)?;
    let stats = KernelStats::describe(Engine::Layered, None, &result.values);
    Ok((result, stats))
}
