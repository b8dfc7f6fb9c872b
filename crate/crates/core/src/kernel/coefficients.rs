use crate::error::Result;
use crate::set::{CoefficientVector, SumsetKind};

/// Streams every coefficient vector of a sumset kind with weight exactly `h`,
/// in lexicographic order of the coefficient tuples.
///
/// Each step finds the rightmost coordinate that can still be raised without
/// making the remaining weight unplaceable, raises it to the next admissible
/// value and refills the suffix with its lexicographically least completion.
#[derive(Debug, Clone)]
pub struct CoefficientVectors {
    k: usize,
    h: usize,
    kind: SumsetKind,
    lo: i64,
    hi: i64,
    current: Vec<i64>,
    state: State,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum State {
    Fresh,
    Running,
    Done,
}

pub fn enumerate_coefficients(k: usize, h: usize, kind: SumsetKind) -> Result<CoefficientVectors> {
    kind.check_fold(k, h)?;
    let max = kind.max_coefficient(h);
    let (lo, hi) = if kind.is_signed() { (-max, max) } else { (0, max) };
    Ok(CoefficientVectors {
        k,
        h,
        kind,
        lo,
        hi,
        current: vec![0; k],
        state: State::Fresh,
    })
}

impl CoefficientVectors {
    /// Whether `remaining` weight fits into `slots` trailing coordinates.
    fn placeable(&self, remaining: u64, slots: usize) -> bool {
        if self.kind.is_restricted() {
            remaining <= slots as u64
        } else {
            slots > 0 || remaining == 0
        }
    }

    fn fill_from(&mut self, start: usize, mut remaining: u64) {
        for pos in start..self.k {
            let slots = self.k - pos - 1;
            let v = (self.lo..=self.hi)
                .find(|v| {
                    let w = v.unsigned_abs();
                    w <= remaining && self.placeable(remaining - w, slots)
                })
                .expect("a completion exists whenever the prefix was admissible");
            self.current[pos] = v;
            remaining -= v.unsigned_abs();
        }
        debug_assert_eq!(remaining, 0);
    }

    fn advance(&mut self) -> bool {
        let mut prefix_weight: Vec<u64> = Vec::with_capacity(self.k + 1);
        prefix_weight.push(0);
        for c in &self.current {
            prefix_weight.push(prefix_weight.last().unwrap() + c.unsigned_abs());
        }
        for pos in (0..self.k).rev() {
            let remaining = self.h as u64 - prefix_weight[pos];
            let slots = self.k - pos - 1;
            let next = (self.current[pos] + 1..=self.hi).find(|v| {
                let w = v.unsigned_abs();
                w <= remaining && self.placeable(remaining - w, slots)
            });
            if let Some(v) = next {
                self.current[pos] = v;
                self.fill_from(pos + 1, remaining - v.unsigned_abs());
                return true;
            }
        }
        false
    }
}

impl Iterator for CoefficientVectors {
    type Item = CoefficientVector;

    fn next(&mut self) -> Option<CoefficientVector> {
        match self.state {
            State::Done => return None,
            State::Fresh => {
                self.fill_from(0, self.h as u64);
                self.state = State::Running;
            }
            State::Running => {
                if !self.advance() {
                    self.state = State::Done;
                    return None;
                }
            }
        }
        Some(CoefficientVector {
            coefficients: self.current.clone(),
        })
    }
}
