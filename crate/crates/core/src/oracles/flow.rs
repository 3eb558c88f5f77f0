//! Dinic max-flow over real capacities, used by the densest-subgraph oracle.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    rev: usize,
    cap: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct FlowNetwork {
    adj: Vec<Vec<Arc>>,
    eps: f64,
}

impl FlowNetwork {
    /// Residual capacities at or below `eps` count as saturated.
    pub(crate) fn new(nodes: usize, eps: f64) -> Self {
        FlowNetwork {
            adj: vec![Vec::new(); nodes],
            eps,
        }
    }

    pub(crate) fn add_arc(&mut self, from: usize, to: usize, cap: f64) {
        let rev_from = self.adj[to].len();
        let rev_to = self.adj[from].len();
        self.adj[from].push(Arc {
            to,
            rev: rev_from,
            cap,
        });
        self.adj[to].push(Arc {
            to: from,
            rev: rev_to,
            cap: 0.0,
        });
    }

    /// Undirected edge: capacity `cap` in both directions.
    pub(crate) fn add_edge(&mut self, a: usize, b: usize, cap: f64) {
        let rev_a = self.adj[b].len();
        let rev_b = self.adj[a].len();
        self.adj[a].push(Arc { to: b, rev: rev_a, cap });
        self.adj[b].push(Arc { to: a, rev: rev_b, cap });
    }

    fn levels(&self, source: usize) -> Vec<i64> {
        let mut level = vec![-1; self.adj.len()];
        level[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for arc in &self.adj[u] {
                if arc.cap > self.eps && level[arc.to] < 0 {
                    level[arc.to] = level[u] + 1;
                    queue.push_back(arc.to);
                }
            }
        }
        level
    }

    fn augment(&mut self, u: usize, sink: usize, pushed: f64, level: &[i64], next: &mut [usize]) -> f64 {
        if u == sink {
            return pushed;
        }
        while next[u] < self.adj[u].len() {
            let i = next[u];
            let Arc { to, rev, cap } = self.adj[u][i];
            if cap > self.eps && level[to] == level[u] + 1 {
                let got = self.augment(to, sink, pushed.min(cap), level, next);
                if got > 0.0 {
                    self.adj[u][i].cap -= got;
                    self.adj[to][rev].cap += got;
                    return got;
                }
            }
            next[u] += 1;
        }
        0.0
    }

    pub(crate) fn max_flow(&mut self, source: usize, sink: usize) -> f64 {
        let mut total = 0.0;
        loop {
            let level = self.levels(source);
            if level[sink] < 0 {
                return total;
            }
            let mut next = vec![0; self.adj.len()];
            loop {
                let pushed = self.augment(source, sink, f64::INFINITY, &level, &mut next);
                if pushed <= 0.0 {
                    break;
                }
                total += pushed;
            }
        }
    }

    /// Nodes reachable from `source` in the residual graph (the source side of a min cut).
    pub(crate) fn source_side(&self, source: usize) -> Vec<bool> {
        self.levels(source).into_iter().map(|l| l >= 0).collect()
    }
}
