//! The k-clique relaxation with non-edge orthogonality.
//!
//! Variables are vectors `X_1..X_n` and an anchor `I`, stored as the
//! `(n+1) x (n+1)` Gram matrix with the anchor at index 0:
//!
//! ```text
//! max  1/2 sum_{i,j} A_ij <X_i, X_j>            (self-loops included)
//! s.t. sum_i |X_i|^2 = k
//!      sum_j <X_i, X_j> <= k |X_i|^2             for all i
//!      <X_i, X_j> = 0                            for non-edges {i, j}
//!      0 <= <X_i, X_j> <= |X_i|^2                for i != j
//!      |X_i|^2 <= 1,  <X_i, I> = |X_i|^2,  <I, I> = 1
//! ```
//!
//! On a graph that contains a k-clique the optimum is exactly `k^2 / 2`:
//! the planted integral solution attains it, and nonnegativity plus the row
//! bound give `sum_{i,j} A_ij G_ij <= sum_i k G_ii = k^2`.
//!
//! [`solve_sdp`] is a low-rank augmented-Lagrangian method;
//! [`solve_sdp_admm`] is an independent full-matrix operator-splitting method
//! for small `n` used to cross-check it.

mod admm;
mod lowrank;
mod mass;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::spectral::min_eigenvalue;

pub use admm::{solve_sdp_admm, AdmmConfig};
pub use lowrank::solve_sdp;
pub use mass::{clique_mass_bound_holds, boundary_mass_bound_holds, monotone_bound_holds, sdp_mass_decomposition, BlockMassReport};

/// Largest violation per constraint family; all entries are `>= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FeasibilityReport {
    /// `|sum_i G_ii - k|`.
    pub sum_k: f64,
    /// `max_i (sum_j G_ij - k G_ii)^+`.
    pub row_bound: f64,
    /// `max |G_ij|` over non-edges.
    pub nonedge_zero: f64,
    /// Violations of `0 <= G_ij <= G_ii` (i != j) and `0 <= G_ii <= 1`.
    #[serde(rename = "box")]
    pub box_: f64,
    /// `|G_00 - 1|` and `|G_i0 - G_ii|`.
    pub anchor: f64,
    /// `max(0, -lambda_min)` of the full Gram matrix.
    pub psd: f64,
}

impl FeasibilityReport {
    /// Largest violation among the linear families (everything but `psd`).
    pub fn max_linear(&self) -> f64 {
        self.sum_k
            .max(self.row_bound)
            .max(self.nonedge_zero)
            .max(self.box_)
            .max(self.anchor)
    }

    pub fn max(&self) -> f64 {
        self.max_linear().max(self.psd)
    }

    pub fn within(&self, tol: f64, tol_psd: f64) -> bool {
        self.max_linear() <= tol && self.psd <= tol_psd
    }
}

fn default_inner_iters() -> usize {
    500
}

/// Solver settings. `rank_cap = None` picks `ceil(sqrt(2n)) + 2` columns.
/// Missing JSON fields take their default values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub tol: f64,
    pub tol_psd: f64,
    /// Outer (multiplier update) iterations.
    pub max_iters: usize,
    pub rank_cap: Option<usize>,
    pub init_seed: u64,
    /// L-BFGS iterations per outer iteration.
    pub inner_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tol: 1e-6,
            tol_psd: 1e-7,
            max_iters: 300,
            rank_cap: None,
            init_seed: 0,
            inner_iters: default_inner_iters(),
        }
    }
}

impl SolverConfig {
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn rank_for(&self, n: usize) -> usize {
        self.rank_cap
            .unwrap_or_else(|| (2.0 * n as f64).sqrt().ceil() as usize + 2)
            .clamp(1, n + 1)
    }
}

/// A Gram matrix with its objective and feasibility report.
#[derive(Debug, Clone, PartialEq)]
pub struct SdpSolution {
    pub k: usize,
    /// `(n+1) x (n+1)`; index 0 is the anchor `I`, index `v + 1` is vertex `v`.
    pub gram: DMatrix<f64>,
    pub objective: f64,
    pub residuals: FeasibilityReport,
    /// Outer iterations used by the solver (0 for constructed solutions).
    pub iterations: usize,
}

impl SdpSolution {
    /// Wraps a Gram matrix, computing objective and residuals against `graph`.
    pub fn from_gram(graph: &Graph, k: usize, gram: DMatrix<f64>) -> Result<Self> {
        let residuals = check_gram(&gram, graph, k)?;
        Ok(SdpSolution {
            k,
            objective: objective(graph, &gram),
            gram,
            residuals,
            iterations: 0,
        })
    }

    /// The integral solution: `X_i = I` for `i` in `set`, `X_i = 0` otherwise.
    pub fn integral(graph: &Graph, set: &[usize]) -> Self {
        let n = graph.n();
        let mut gram = DMatrix::zeros(n + 1, n + 1);
        let members: Vec<usize> = std::iter::once(0).chain(set.iter().map(|&v| v + 1)).collect();
        for &a in &members {
            for &b in &members {
                gram[(a, b)] = 1.0;
            }
        }
        SdpSolution::from_gram(graph, set.len(), gram).expect("dimensions match")
    }

    pub fn n(&self) -> usize {
        self.gram.nrows() - 1
    }

    /// `|X_v|^2`.
    pub fn norm2(&self, v: usize) -> f64 {
        self.gram[(v + 1, v + 1)]
    }

    /// `<X_u, X_v>`.
    pub fn inner(&self, u: usize, v: usize) -> f64 {
        self.gram[(u + 1, v + 1)]
    }

    /// The `n x n` Gram matrix of the vertex vectors.
    pub fn vertex_gram(&self) -> DMatrix<f64> {
        self.gram.view((1, 1), (self.n(), self.n())).into_owned()
    }

    /// Gram matrix of the vectors of `block`, in the given order.
    pub fn block_gram(&self, block: &[usize]) -> DMatrix<f64> {
        let m = block.len();
        DMatrix::from_fn(m, m, |a, b| self.inner(block[a], block[b]))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&SdpSolutionJson::from(self)).expect("solution serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: SdpSolutionJson = serde_json::from_str(text)?;
        raw.try_into()
    }
}

/// Wire format: the Gram matrix as its row-major lower triangle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SdpSolutionJson {
    pub n: usize,
    pub k: usize,
    pub objective: f64,
    pub residuals: FeasibilityReport,
    #[serde(default)]
    pub iterations: usize,
    pub gram: Vec<f64>,
}

impl From<&SdpSolution> for SdpSolutionJson {
    fn from(sol: &SdpSolution) -> Self {
        let m = sol.gram.nrows();
        let gram = (0..m).flat_map(|i| (0..=i).map(move |j| (i, j))).map(|(i, j)| sol.gram[(i, j)]).collect();
        SdpSolutionJson {
            n: sol.n(),
            k: sol.k,
            objective: sol.objective,
            residuals: sol.residuals,
            iterations: sol.iterations,
            gram,
        }
    }
}

impl TryFrom<SdpSolutionJson> for SdpSolution {
    type Error = Error;

    fn try_from(raw: SdpSolutionJson) -> Result<Self> {
        let m = raw.n + 1;
        if raw.gram.len() != m * (m + 1) / 2 {
            return Err(Error::DimensionMismatch {
                expected: m * (m + 1) / 2,
                found: raw.gram.len(),
            });
        }
        let mut gram = DMatrix::zeros(m, m);
        let mut it = raw.gram.into_iter();
        for i in 0..m {
            for j in 0..=i {
                let v = it.next().expect("length checked");
                gram[(i, j)] = v;
                gram[(j, i)] = v;
            }
        }
        Ok(SdpSolution {
            k: raw.k,
            gram,
            objective: raw.objective,
            residuals: raw.residuals,
            iterations: raw.iterations,
        })
    }
}

impl Serialize for SdpSolution {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SdpSolutionJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SdpSolution {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        SdpSolutionJson::deserialize(deserializer)?
            .try_into()
            .map_err(serde::de::Error::custom)
    }
}

/// `1/2 sum_{i,j} A_ij G_ij` over the vertex block of `gram`, diagonal included.
pub fn objective(graph: &Graph, gram: &DMatrix<f64>) -> f64 {
    let n = graph.n();
    0.5 * graph.weights().dot(&gram.view((1, 1), (n, n)))
}

/// Feasibility report of a candidate solution against `graph` and `k`.
pub fn check_feasible(sol: &SdpSolution, graph: &Graph, k: usize) -> Result<FeasibilityReport> {
    check_gram(&sol.gram, graph, k)
}

/// Same as [`check_feasible`] for a bare `(n+1) x (n+1)` Gram matrix.
pub fn check_gram(gram: &DMatrix<f64>, graph: &Graph, k: usize) -> Result<FeasibilityReport> {
    let n = graph.n();
    if gram.nrows() != n + 1 || gram.ncols() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: gram.nrows(),
        });
    }
    let g = |i: usize, j: usize| gram[(i + 1, j + 1)];
    let kf = k as f64;
    let mut report = FeasibilityReport {
        anchor: (gram[(0, 0)] - 1.0).abs(),
        ..Default::default()
    };
    let mut trace = 0.0;
    for i in 0..n {
        let gii = g(i, i);
        trace += gii;
        let row: f64 = (0..n).map(|j| g(i, j)).sum();
        report.row_bound = report.row_bound.max(row - kf * gii);
        report.box_ = report.box_.max(gii - 1.0).max(-gii);
        report.anchor = report
            .anchor
            .max((gram[(i + 1, 0)] - gii).abs())
            .max((gram[(0, i + 1)] - gii).abs());
        for j in 0..n {
            if i == j {
                continue;
            }
            let gij = g(i, j);
            if !graph.has_edge(i, j) {
                report.nonedge_zero = report.nonedge_zero.max(gij.abs());
            }
            report.box_ = report.box_.max(-gij).max(gij - gii);
        }
    }
    report.sum_k = (trace - kf).abs();
    report.psd = psd_violation(gram);
    Ok(report)
}

/// `max(0, -lambda_min(m))` of a symmetric matrix (the symmetric part is used).
///
/// Eigenvalues within the eigensolver's backward error `dim * eps * ||m||_F`
/// of zero are not counted as violations.
pub fn psd_violation(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let min = min_eigenvalue(m);
    let roundoff = m.nrows() as f64 * f64::EPSILON * m.norm();
    (-min - roundoff).max(0.0)
}
