//! Rounding the SDP solution to the planted clique.
//!
//! With `psi` as below, `nu = 9 psi` and `alpha = 1 / (3 sqrt psi)`, the
//! threshold set `T = { i : |X_i|^2 >= 1 - sqrt(nu) / 9 }` is, in the valid
//! regime, a clique inside `S` holding at least `(1 - 1/alpha) k` vertices.
//! Greedy completion then adds every vertex adjacent to all of the current
//! set.
//!
//! ```text
//! psi = 4 xi^2 (np) (r + t + 1) / (k^2 (1 - 6p - 2 gamma - d/s - lambda/k)^2)
//! ```
//!
//! The `d/s` and `lambda/k` terms only arise from expander blocks and are
//! taken as 0 when `r = 0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::model::{ModelParams, PlantedInstance};
use crate::oracles::xi::DEFAULT_KAPPA;
use crate::sdp::SdpSolution;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecoveryParams {
    pub xi: f64,
    pub kappa: f64,
    pub psi: f64,
    pub nu: f64,
    pub alpha: f64,
    pub threshold: f64,
    /// `1 - 6p - 2 gamma - d/s - lambda/k`.
    pub denominator: f64,
    /// `nu` lies in the open interval `(0, 1)`.
    pub valid: bool,
    /// `np >= kappa ln n`.
    pub regime_ok: bool,
    /// `n p^{(1 - 3 sqrt psi) k}`; small values mean the union bound behind
    /// `T subset S` is comfortable.
    pub union_bound: f64,
}

/// Recovery parameters with `kappa = DEFAULT_KAPPA`.
pub fn compute_params(params: &ModelParams, xi: f64) -> Result<RecoveryParams> {
    compute_params_with_kappa(params, xi, DEFAULT_KAPPA)
}

pub fn compute_params_with_kappa(params: &ModelParams, xi: f64, kappa: f64) -> Result<RecoveryParams> {
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(Error::InvalidParams(format!("xi must be finite and nonnegative, got {xi}")));
    }
    if params.k == 0 {
        return Err(Error::InvalidParams("k must be positive".into()));
    }
    let (n, k, p) = (params.n as f64, params.k as f64, params.p);
    let expander_term = if params.r == 0 {
        0.0
    } else {
        params.d as f64 / params.s as f64 + params.lambda / k
    };
    let denominator = 1.0 - 6.0 * p - 2.0 * params.gamma - expander_term;
    if !(denominator > 0.0) {
        return Err(Error::InvalidDenominator(denominator));
    }
    let blocks = (params.r + params.t + 1) as f64;
    let psi = 4.0 * xi * xi * (n * p) * blocks / (k * k * denominator * denominator);
    let nu = 9.0 * psi;
    Ok(RecoveryParams {
        xi,
        kappa,
        psi,
        nu,
        alpha: 1.0 / (3.0 * psi.sqrt()),
        threshold: 1.0 - nu.sqrt() / 9.0,
        denominator,
        valid: nu > 0.0 && nu < 1.0,
        regime_ok: n * p >= kappa * n.ln(),
        union_bound: n * p.powf((1.0 - 3.0 * psi.sqrt()) * k),
    })
}

/// `T = { i : |X_i|^2 >= threshold }`.
pub fn threshold_select(sol: &SdpSolution, rp: &RecoveryParams) -> VertexSet {
    (0..sol.n()).filter(|&i| sol.norm2(i) >= rp.threshold).collect()
}

/// Checks that vectors with squared norm at least `1 - eps` are pairwise
/// `3 eps`-close in inner product: `<X_i, X_j> >= 1 - 3 eps - tol`.
pub fn verify_clustering(sol: &SdpSolution, set: &[usize], eps: f64, tol: f64) -> Result<bool> {
    if let Some(&v) = set.iter().find(|&&v| sol.norm2(v) < 1.0 - eps - tol) {
        return Err(Error::PreconditionViolated(format!(
            "|X_{v}|^2 = {} is below 1 - eps = {}",
            sol.norm2(v),
            1.0 - eps
        )));
    }
    let floor = 1.0 - 3.0 * eps - tol;
    Ok(set
        .iter()
        .all(|&i| set.iter().all(|&j| i == j || sol.inner(i, j) >= floor)))
}

/// Every unordered pair of `set` is an edge.
pub fn certify_clique(graph: &Graph, set: &[usize]) -> bool {
    graph.is_clique(set)
}

/// Scans `V \ T` in increasing order and adds each vertex adjacent to every
/// current member.
pub fn greedy_complete(graph: &Graph, t: &[usize]) -> Result<VertexSet> {
    if !graph.is_clique(t) {
        return Err(Error::NotAClique);
    }
    let mut member = vec![false; graph.n()];
    let mut q: VertexSet = t.to_vec();
    for &v in t {
        member[v] = true;
    }
    for v in 0..graph.n() {
        if !member[v] && q.iter().all(|&u| graph.has_edge(u, v)) {
            q.push(v);
            member[v] = true;
        }
    }
    q.sort_unstable();
    Ok(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureReason {
    InvalidNu,
    EmptyT,
    TNotClique,
    TEscapesS,
    /// `T` was a clique inside `S` but completion did not end at `S`.
    IncompleteRecovery,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryResult {
    #[serde(rename = "T")]
    pub t: VertexSet,
    /// `None` when rounding stopped before completion.
    #[serde(rename = "Q")]
    pub q: Option<VertexSet>,
    pub psi: f64,
    pub nu: f64,
    pub alpha: f64,
    pub threshold: f64,
    pub t_is_clique: bool,
    /// `Q == S`; `None` without ground truth.
    pub success: Option<bool>,
    pub failure_reason: Option<FailureReason>,
    /// `|T intersect S|` when ground truth is known.
    pub t_overlap: Option<usize>,
    /// `|T intersect S| >= (1 - 1/alpha) k` when ground truth is known.
    pub overlap_bound_holds: Option<bool>,
}

impl RecoveryResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }
}

/// Rounds without ground truth.
pub fn recover_graph(graph: &Graph, sol: &SdpSolution, rp: &RecoveryParams) -> RecoveryResult {
    round(graph, sol, rp, None)
}

/// Rounds and compares against the instance's planted set.
pub fn recover(instance: &PlantedInstance, sol: &SdpSolution, rp: &RecoveryParams) -> RecoveryResult {
    round(&instance.graph, sol, rp, Some(instance.s()))
}

fn round(graph: &Graph, sol: &SdpSolution, rp: &RecoveryParams, truth: Option<&VertexSet>) -> RecoveryResult {
    let mut result = RecoveryResult {
        t: Vec::new(),
        q: None,
        psi: rp.psi,
        nu: rp.nu,
        alpha: rp.alpha,
        threshold: rp.threshold,
        t_is_clique: false,
        success: truth.map(|_| false),
        failure_reason: None,
        t_overlap: None,
        overlap_bound_holds: None,
    };
    if !rp.valid {
        result.failure_reason = Some(FailureReason::InvalidNu);
        return result;
    }
    result.t = threshold_select(sol, rp);
    result.t_is_clique = certify_clique(graph, &result.t);
    let in_truth = |v: &usize| truth.map_or(true, |s| s.binary_search(v).is_ok());
    if let Some(s) = truth {
        let overlap = result.t.iter().filter(|v| in_truth(v)).count();
        result.t_overlap = Some(overlap);
        result.overlap_bound_holds = Some(overlap as f64 >= (1.0 - 1.0 / rp.alpha) * s.len() as f64);
    }
    if result.t.is_empty() {
        result.failure_reason = Some(FailureReason::EmptyT);
        return result;
    }
    if !result.t_is_clique {
        result.failure_reason = Some(FailureReason::TNotClique);
        return result;
    }
    let q = greedy_complete(graph, &result.t).expect("T was certified as a clique");
    if let Some(s) = truth {
        let success = &q == s;
        result.success = Some(success);
        if !result.t.iter().all(|v| in_truth(v)) {
            result.failure_reason = Some(FailureReason::TEscapesS);
        } else if !success {
            result.failure_reason = Some(FailureReason::IncompleteRecovery);
        }
    }
    result.q = Some(q);
    result
}
