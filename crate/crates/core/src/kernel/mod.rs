//! Exact h-fold sumsets by two independent engines.
//!
//! [`sumset_naive`] enumerates coefficient vectors and is the oracle.
//! [`sumset_layered`] runs a dense dynamic program over consumed weight and is
//! the fast path used by audits and scans. Both must agree exactly.

mod bitset;
mod coefficients;
mod layered;
mod naive;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use coefficients::{enumerate_coefficients, CoefficientVectors};
pub use layered::{sumset_layered, sumset_layered_with_stats, LayeredTable, LAYERED_BIT_LIMIT};
pub use naive::{sumset_naive, sumset_naive_with_stats};

use crate::error::{Error, Result};
use crate::set::{FiniteIntSet, SumsetKind, SumsetResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Naive,
    #[default]
    Layered,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Naive => "naive",
            Engine::Layered => "layered",
        })
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Engine::Naive),
            "layered" => Ok(Engine::Layered),
            _ => Err(Error::DomainViolation(format!("unknown engine {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelStats {
    /// Coefficient vectors visited; the layered engine does not enumerate them.
    pub vectors_enumerated: Option<u64>,
    pub distinct_values: usize,
    pub value_range: Option<(i64, i64)>,
    pub engine: Engine,
}

impl KernelStats {
    fn describe(engine: Engine, vectors_enumerated: Option<u64>, values: &[i64]) -> Self {
        KernelStats {
            vectors_enumerated,
            distinct_values: values.len(),
            value_range: values.first().zip(values.last()).map(|(a, b)| (*a, *b)),
            engine,
        }
    }
}

pub fn sumset(set: &FiniteIntSet, h: usize, kind: SumsetKind, engine: Engine) -> Result<SumsetResult> {
    match engine {
        Engine::Naive => sumset_naive(set, h, kind),
        Engine::Layered => sumset_layered(set, h, kind),
    }
}

pub fn sumset_with_stats(
    set: &FiniteIntSet,
    h: usize,
    kind: SumsetKind,
    engine: Engine,
) -> Result<(SumsetResult, KernelStats)> {
    match engine {
        Engine::Naive => sumset_naive_with_stats(set, h, kind),
        Engine::Layered => sumset_layered_with_stats(set, h, kind),
    }
}

/// `|h^A|`, the restricted sumset cardinality.
pub fn restricted_sumset_cardinality(set: &FiniteIntSet, h: usize) -> Result<usize> {
    Ok(sumset_layered(set, h, SumsetKind::Restricted)?.cardinality())
}

/// `|h^±A|` by the layered engine.
pub fn restricted_signed_cardinality(set: &FiniteIntSet, h: usize) -> Result<usize> {
    Ok(sumset_layered(set, h, SumsetKind::RestrictedSigned)?.cardinality())
}
