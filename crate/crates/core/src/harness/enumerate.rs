use crate::graph::{edge_pairs, graph_from_mask, Graph};

use super::HarnessError;

/// Largest `n` accepted for exhaustive enumeration (`2^21` labeled graphs).
pub const EXHAUSTIVE_MAX_N: usize = 7;

/// All labeled graphs on `n` vertices, in edge-mask order.
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    pub fn mask_count(&self) -> u64 {
        1u64 << self.pairs.len()
    }

    /// Restricts the stream to masks in `start..end`.
    pub fn range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.mask_count());
        self.next = start.min(self.end);
        self
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let g = graph_from_mask(self.n, &self.pairs, self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledGraphs {}

pub fn enumerate_labeled_graphs(n: usize) -> Result<LabeledGraphs, HarnessError> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(HarnessError::TooLarge {
            n,
            max: EXHAUSTIVE_MAX_N,
        });
    }
    let pairs = edge_pairs(n);
    let end = 1u64 << pairs.len();
    Ok(LabeledGraphs {
        n,
        pairs,
        next: 0,
        end,
    })
}
