//! Exact maximum clique for small graphs (ground truth in tests and
//! acceptance runs). Weight > 0 counts as an edge.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_SIZE_CAP: usize = 40;

/// Hard limit of the bitset representation.
const MAX_SUPPORTED: usize = 128;

struct Search {
    adj: Vec<u128>,
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Search {
    /// Candidates are expanded in increasing index order and only a strictly
    /// larger clique replaces the incumbent, so the first maximum found is the
    /// lexicographically least one.
    fn expand(&mut self, mut candidates: u128) {
        if candidates == 0 {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        while candidates != 0 {
            if self.current.len() + candidates.count_ones() as usize <= self.best.len() {
                return;
            }
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let next = candidates & self.adj[v];
            // Degree pruning: v plus its remaining neighbours cannot beat the incumbent.
            if self.current.len() + 1 + next.count_ones() as usize <= self.best.len() {
                continue;
            }
            self.current.push(v);
            self.expand(next);
            self.current.pop();
        }
    }
}

/// Branch and bound over bitsets. Errors with `TooLarge` above `size_cap`.
pub fn brute_force_max_clique(graph: &Graph, size_cap: usize) -> Result<(usize, VertexSet)> {
    let n = graph.n();
    let cap = size_cap.min(MAX_SUPPORTED);
    if n > cap {
        return Err(Error::TooLarge { n, cap });
    }
    let adj: Vec<u128> = (0..n)
        .map(|i| {
            graph
                .neighbors(i)
                .fold(0u128, |bits, j| bits | (1u128 << j))
        })
        .collect();
    let all = if n == 0 { 0 } else { u128::MAX >> (128 - n) };
    let mut search = Search {
        adj,
        best: Vec::new(),
        current: Vec::new(),
    };
    search.expand(all);
    Ok((search.best.len(), search.best))
}
