//! Dense weighted graphs with the unit self-loop convention.
//!
//! Every vertex carries a self-loop of weight 1, so `weights[(i, i)] == 1`
//! always holds. Off-diagonal weight 0 encodes a non-edge. Spectral and
//! density computations on blocks work on the loop-free adjacency
//! ([`Graph::loopless_adjacency`]).

use std::fmt::Write as _;
use std::io::BufRead;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sorted list of vertex indices.
pub type VertexSet = Vec<usize>;

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    weights: DMatrix<f64>,
}

impl Graph {
    /// `n` isolated vertices (self-loops only).
    pub fn empty(n: usize) -> Self {
        Graph {
            weights: DMatrix::identity(n, n),
        }
    }

    pub fn complete(n: usize) -> Self {
        Graph {
            weights: DMatrix::from_element(n, n, 1.0),
        }
    }

    /// Builds a graph from a full weight matrix. The diagonal is overwritten
    /// with ones; the off-diagonal part must be symmetric and nonnegative.
    pub fn from_weights(mut weights: DMatrix<f64>) -> Result<Self> {
        let n = weights.nrows();
        if weights.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: weights.ncols(),
            });
        }
        weights.fill_diagonal(1.0);
        let g = Graph { weights };
        g.validate()?;
        Ok(g)
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidParams(format!(
                    "edge ({i}, {j}) out of range for n = {n}"
                )));
            }
            if i == j {
                if w != 1.0 {
                    return Err(Error::InvalidParams(format!(
                        "self-loop on {i} must have weight 1, got {w}"
                    )));
                }
                continue;
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "edge ({i}, {j}) has invalid weight {w}"
                )));
            }
            g.set_weight(i, j, w);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.weights.nrows()
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.weights
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.weights[(i, j)]
    }

    /// Sets the symmetric pair `{i, j}`; self-loops are fixed and cannot be changed.
    pub fn set_weight(&mut self, i: usize, j: usize, w: f64) {
        assert!(i != j, "self-loops are fixed at weight 1");
        assert!(w >= 0.0, "weights must be nonnegative");
        self.weights[(i, j)] = w;
        self.weights[(j, i)] = w;
    }

    /// Self-loops count as edges.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.weights[(i, j)] > 0.0
    }

    /// Number of unordered off-diagonal pairs with positive weight.
    pub fn edge_count(&self) -> usize {
        let n = self.n();
        (0..n)
            .map(|i| ((i + 1)..n).filter(|&j| self.has_edge(i, j)).count())
            .sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n();
        (0..n).flat_map(move |i| {
            ((i + 1)..n).filter_map(move |j| {
                let w = self.weights[(i, j)];
                (w > 0.0).then_some((i, j, w))
            })
        })
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n()).filter(move |&j| j != i && self.has_edge(i, j))
    }

    /// Weighted degree `d_i = sum_j w({i, j})`, self-loop included.
    pub fn degree(&self, i: usize) -> f64 {
        self.weights.row(i).sum()
    }

    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(a, &i)| {
            set[a + 1..].iter().all(|&j| self.has_edge(i, j))
        })
    }

    /// Subgraph induced on `set`, relabelled `0..set.len()` in the given order.
    pub fn induced(&self, set: &[usize]) -> Graph {
        let m = set.len();
        Graph {
            weights: DMatrix::from_fn(m, m, |a, b| self.weights[(set[a], set[b])]),
        }
    }

    /// Adjacency with the self-loops removed.
    pub fn loopless_adjacency(&self) -> DMatrix<f64> {
        let mut a = self.weights.clone();
        a.fill_diagonal(0.0);
        a
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        for i in 0..n {
            if self.weights[(i, i)] != 1.0 {
                return Err(Error::InvalidParams(format!("vertex {i} lacks a unit self-loop")));
            }
            for j in (i + 1)..n {
                let w = self.weights[(i, j)];
                if w != self.weights[(j, i)] {
                    return Err(Error::NotSymmetric);
                }
                if !(w >= 0.0) || !w.is_finite() {
                    return Err(Error::InvalidParams(format!("pair ({i}, {j}) has weight {w}")));
                }
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from(self)).expect("graph serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(s)?;
        raw.try_into()
    }

    /// `i j w` per line, 0-indexed, preceded by a `# n <n>` header.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        writeln!(out, "# n {}", self.n()).unwrap();
        for (i, j, w) in self.edges() {
            writeln!(out, "{i} {j} {w}").unwrap();
        }
        out
    }

    /// Parses the edge-list format. Without a `# n` header the vertex count is
    /// inferred from the largest index.
    pub fn from_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        let mut max_index = None;
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let mut parts = rest.split_whitespace();
                if parts.next() == Some("n") {
                    let value = parts
                        .next()
                        .ok_or_else(|| Error::Parse(format!("line {}: missing n", lineno + 1)))?;
                    n = Some(value.parse().map_err(|e| {
                        Error::Parse(format!("line {}: {e}", lineno + 1))
                    })?);
                }
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(Error::Parse(format!(
                    "line {}: expected `i j w`, got {line:?}",
                    lineno + 1
                )));
            }
            let parse_err = |e: &dyn std::fmt::Display| Error::Parse(format!("line {}: {e}", lineno + 1));
            let i: usize = fields[0].parse().map_err(|e| parse_err(&e))?;
            let j: usize = fields[1].parse().map_err(|e| parse_err(&e))?;
            let w: f64 = fields[2].parse().map_err(|e| parse_err(&e))?;
            max_index = Some(max_index.unwrap_or(0).max(i).max(j));
            edges.push((i, j, w));
        }
        let n = n.unwrap_or_else(|| max_index.map_or(0, |m| m + 1));
        Graph::from_edges(n, &edges)
    }
}

/// Wire format: `{n, edges: [[i, j, w], ...]}` with `i < j` and `w > 0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize, f64)>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        Graph::from_edges(raw.n, &raw.edges)
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = GraphJson::deserialize(deserializer)?;
        Graph::try_from(raw).map_err(serde::de::Error::custom)
    }
}
