use serde::{Deserialize, Serialize};

use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Ground-truth vertex partition. All sets are sorted and pairwise disjoint
/// and together cover `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    #[serde(rename = "S")]
    pub s: VertexSet,
    pub lambdas: Vec<VertexSet>,
    pub pis: Vec<VertexSet>,
    /// Vertices in no block; each is its own singleton block.
    #[serde(default)]
    pub remainder: VertexSet,
}

impl Partition {
    /// One label per vertex; two vertices share a label iff they lie in the
    /// same block. Remainder vertices get unique labels.
    pub fn labels(&self, n: usize) -> Vec<usize> {
        let mut labels = vec![usize::MAX; n];
        let mut next = 0;
        for block in std::iter::once(&self.s).chain(&self.lambdas).chain(&self.pis) {
            for &v in block {
                labels[v] = next;
            }
            next += 1;
        }
        for &v in &self.remainder {
            labels[v] = next;
            next += 1;
        }
        labels
    }

    pub fn in_s(&self, n: usize) -> Vec<bool> {
        let mut member = vec![false; n];
        for &v in &self.s {
            member[v] = true;
        }
        member
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        let mut seen = vec![false; n];
        let blocks = std::iter::once(&self.s)
            .chain(&self.lambdas)
            .chain(&self.pis)
            .chain(std::iter::once(&self.remainder));
        for block in blocks {
            if block.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidParams("partition blocks must be sorted".into()));
            }
            for &v in block {
                if v >= n || seen[v] {
                    return Err(Error::InvalidParams(format!(
                        "vertex {v} is out of range or in two blocks"
                    )));
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|&b| !b) {
            return Err(Error::InvalidParams("partition does not cover every vertex".into()));
        }
        Ok(())
    }
}

/// A generated instance: the post-adversary graph, the pre-adversary graph
/// and the hidden partition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlantedInstance {
    #[serde(flatten)]
    pub graph: Graph,
    pub pre_adversary: Graph,
    #[serde(flatten)]
    pub partition: Partition,
    pub seed: u64,
    pub params: ModelParams,
}

impl PlantedInstance {
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn s(&self) -> &VertexSet {
        &self.partition.s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let instance: PlantedInstance = serde_json::from_str(text)?;
        instance.validate()?;
        Ok(instance)
    }

    /// Structural invariants: a valid partition, a unit-weight clique on `S`,
    /// and `graph <= pre_adversary` entrywise with equality inside `S`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if self.pre_adversary.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.pre_adversary.n(),
            });
        }
        self.graph.validate()?;
        self.pre_adversary.validate()?;
        self.partition.validate(n)?;
        let in_s = self.partition.in_s(n);
        for i in 0..n {
            for j in 0..n {
                let (now, before) = (self.graph.weight(i, j), self.pre_adversary.weight(i, j));
                if now > before {
                    return Err(Error::InvalidParams(format!("adversary raised pair ({i}, {j})")));
                }
                if in_s[i] && in_s[j] && (now != 1.0 || before != 1.0) {
                    return Err(Error::InvalidParams(format!("pair ({i}, {j}) in S is not a unit edge")));
                }
            }
        }
        Ok(())
    }
}
