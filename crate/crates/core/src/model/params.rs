use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which edges the monotone adversary deletes. Only edges with at least one
/// endpoint outside `S` are ever touched.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", content = "phi", rename_all = "snake_case")]
pub enum AdversaryKind {
    #[default]
    None,
    /// Delete `round(phi * m)` of the `m` eligible edges, chosen uniformly.
    RandomFraction(f64),
    /// Delete `round(phi * m)` of the `m` edges between `S` and `V \ S`,
    /// starting with outside vertices that see the most of `S`.
    TargetedBoundary(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct AdversaryPolicy {
    #[serde(flatten)]
    pub kind: AdversaryKind,
    #[serde(default)]
    pub seed: u64,
}

impl AdversaryPolicy {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn random_fraction(phi: f64, seed: u64) -> Self {
        AdversaryPolicy {
            kind: AdversaryKind::RandomFraction(phi),
            seed,
        }
    }

    pub fn targeted_boundary(phi: f64, seed: u64) -> Self {
        AdversaryPolicy {
            kind: AdversaryKind::TargetedBoundary(phi),
            seed,
        }
    }

    fn phi(&self) -> Option<f64> {
        match self.kind {
            AdversaryKind::None => None,
            AdversaryKind::RandomFraction(phi) | AdversaryKind::TargetedBoundary(phi) => Some(phi),
        }
    }
}

fn one() -> f64 {
    1.0
}

fn default_attempts() -> usize {
    1000
}

/// The nine model scalars plus seed, adversary and construction hooks.
///
/// Vertices that belong to neither `S`, a `Lambda` block nor a `Pi` block form
/// the remainder; each behaves as a singleton block. With the default
/// `pi_sizes = None` the `n - k - r*s` leftover vertices are split as evenly
/// as possible over the `t` Pi blocks, so a remainder only exists when `t = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n: usize,
    pub k: usize,
    pub p: f64,
    #[serde(default)]
    pub r: usize,
    #[serde(default)]
    pub s: usize,
    #[serde(default)]
    pub t: usize,
    #[serde(default)]
    pub d: usize,
    #[serde(default)]
    pub gamma: f64,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub adversary: AdversaryPolicy,
    /// Explicit Pi block sizes (length `t`); may leave a remainder.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_sizes: Option<Vec<usize>>,
    /// Weight of expander and low-density edges.
    #[serde(default = "one")]
    pub block_weight: f64,
    #[serde(default = "default_attempts")]
    pub expander_attempts: usize,
}

impl ModelParams {
    /// Plain planted clique: `r = t = 0`, no adversary.
    pub fn planted(n: usize, k: usize, p: f64) -> Self {
        ModelParams {
            n,
            k,
            p,
            r: 0,
            s: 0,
            t: 0,
            d: 0,
            gamma: 0.0,
            lambda: 0.0,
            seed: 0,
            adversary: AdversaryPolicy::none(),
            pi_sizes: None,
            block_weight: 1.0,
            expander_attempts: default_attempts(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_expanders(mut self, r: usize, s: usize, d: usize, lambda: f64) -> Self {
        self.r = r;
        self.s = s;
        self.d = d;
        self.lambda = lambda;
        self
    }

    pub fn with_low_density(mut self, t: usize, gamma: f64) -> Self {
        self.t = t;
        self.gamma = gamma;
        self
    }

    pub fn with_pi_sizes(mut self, sizes: Vec<usize>) -> Self {
        self.t = sizes.len();
        self.pi_sizes = Some(sizes);
        self
    }

    pub fn with_adversary(mut self, adversary: AdversaryPolicy) -> Self {
        self.adversary = adversary;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.k == 0 || self.k > self.n {
            return bad(format!("need 1 <= k <= n, got k = {}, n = {}", self.k, self.n));
        }
        if !(0.0..1.0).contains(&self.p) {
            return bad(format!("p = {} outside [0, 1)", self.p));
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return bad(format!("gamma = {} outside [0, 1)", self.gamma));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return bad(format!("lambda = {} must be finite and nonnegative", self.lambda));
        }
        if !(self.block_weight > 0.0 && self.block_weight.is_finite()) {
            return bad(format!("block_weight = {} must be positive", self.block_weight));
        }
        if self.k + self.r * self.s > self.n {
            return bad(format!(
                "k + r*s = {} exceeds n = {}",
                self.k + self.r * self.s,
                self.n
            ));
        }
        if self.r > 0 && (self.d >= self.s || (self.d * self.s) % 2 == 1) {
            return bad(format!(
                "no {}-regular graph on {} vertices",
                self.d, self.s
            ));
        }
        if let Some(sizes) = &self.pi_sizes {
            if sizes.len() != self.t {
                return bad(format!("{} Pi sizes given for t = {}", sizes.len(), self.t));
            }
            if sizes.iter().sum::<usize>() > self.leftover() {
                return bad(format!("Pi sizes exceed the {} leftover vertices", self.leftover()));
            }
        }
        if let Some(phi) = self.adversary.phi() {
            if !(0.0..=1.0).contains(&phi) {
                return bad(format!("adversary fraction {phi} outside [0, 1]"));
            }
        }
        Ok(())
    }

    /// Vertices not in `S` or any Lambda block.
    pub fn leftover(&self) -> usize {
        self.n.saturating_sub(self.k + self.r * self.s)
    }

    /// Sizes of the Pi blocks.
    pub fn pi_block_sizes(&self) -> Vec<usize> {
        if let Some(sizes) = &self.pi_sizes {
            return sizes.clone();
        }
        let m = self.leftover();
        (0..self.t)
            .map(|l| m / self.t + usize::from(l < m % self.t))
            .collect()
    }
}
