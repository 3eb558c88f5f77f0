use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AdversaryPolicy, ModelParams};
use crate::sdp::SolverConfig;

/// Values of one swept parameter: a scalar, an explicit list, or
/// `{"linspace": [start, stop, count]}` (endpoints included).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Sweep {
    Scalar(f64),
    List(Vec<f64>),
    Linspace { linspace: (f64, f64, usize) },
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        match self {
            Sweep::Scalar(v) => vec![*v],
            Sweep::List(values) => values.clone(),
            Sweep::Linspace {
                linspace: (start, stop, count),
            } => match *count {
                0 => Vec::new(),
                1 => vec![*start],
                c => (0..c)
                    .map(|i| start + (stop - start) * i as f64 / (c - 1) as f64)
                    .collect(),
            },
        }
    }
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep::Scalar(0.0)
    }
}

/// Ranges for the nine model scalars. Integer parameters are rounded and
/// must be whole numbers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelRanges {
    pub n: Sweep,
    pub k: Sweep,
    pub p: Sweep,
    #[serde(default)]
    pub r: Sweep,
    #[serde(default)]
    pub s: Sweep,
    #[serde(default)]
    pub t: Sweep,
    #[serde(default)]
    pub d: Sweep,
    #[serde(default)]
    pub gamma: Sweep,
    #[serde(default)]
    pub lambda: Sweep,
    #[serde(default)]
    pub adversary: AdversaryPolicy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum XiSource {
    Fixed(f64),
    /// `multiplier * estimate_xi(n, p, trials, seed)`, computed once per `(n, p)`.
    Estimated {
        trials: usize,
        #[serde(default = "one")]
        multiplier: f64,
        #[serde(default)]
        seed: u64,
    },
}

fn one() -> f64 {
    1.0
}

fn yes() -> bool {
    true
}

fn kappa_default() -> f64 {
    crate::oracles::xi::DEFAULT_KAPPA
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryConfig {
    pub xi: XiSource,
    #[serde(default = "kappa_default")]
    pub kappa: f64,
    /// Record cells with `nu` outside `(0, 1)` as `InvalidNu` without solving.
    #[serde(default = "yes")]
    pub skip_invalid: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub model: ModelRanges,
    #[serde(default)]
    pub solver: SolverConfig,
    pub recovery: RecoveryConfig,
    pub trials_per_cell: usize,
    #[serde(default)]
    pub seed_base: u64,
    pub output_dir: PathBuf,
}

fn whole(name: &str, v: f64) -> Result<usize> {
    if v < 0.0 || v.fract() != 0.0 || !v.is_finite() {
        return Err(Error::InvalidParams(format!("{name} = {v} is not a nonnegative integer")));
    }
    Ok(v as usize)
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials_per_cell == 0 {
            return Err(Error::InvalidParams("trials_per_cell must be at least 1".into()));
        }
        let m = &self.model;
        for (name, sweep) in [
            ("n", &m.n),
            ("k", &m.k),
            ("p", &m.p),
            ("r", &m.r),
            ("s", &m.s),
            ("t", &m.t),
            ("d", &m.d),
            ("gamma", &m.gamma),
            ("lambda", &m.lambda),
        ] {
            if sweep.values().is_empty() {
                return Err(Error::InvalidParams(format!("parameter {name} has no values")));
            }
        }
        for cell in self.cells()? {
            cell.validate()?;
        }
        Ok(())
    }

    /// Cartesian product of the swept values in the order
    /// `n, k, p, r, s, t, d, gamma, lambda` (last varies fastest).
    pub fn cells(&self) -> Result<Vec<ModelParams>> {
        let m = &self.model;
        let mut out = Vec::new();
        for n in m.n.values() {
            for k in m.k.values() {
                for p in m.p.values() {
                    for r in m.r.values() {
                        for s in m.s.values() {
                            for t in m.t.values() {
                                for d in m.d.values() {
                                    for gamma in m.gamma.values() {
                                        for lambda in m.lambda.values() {
                                            let mut params = ModelParams::planted(whole("n", n)?, whole("k", k)?, p)
                                                .with_expanders(whole("r", r)?, whole("s", s)?, whole("d", d)?, lambda)
                                                .with_low_density(whole("t", t)?, gamma)
                                                .with_adversary(m.adversary);
                                            params.seed = 0;
                                            out.push(params);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}
