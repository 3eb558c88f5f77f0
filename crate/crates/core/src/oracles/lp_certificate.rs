//! Charikar's densest-subgraph LP and the map from an SDP solution to a
//! feasible LP point on a block.
//!
//! The LP over a graph `H = (V', E', w')`:
//!
//! ```text
//! max  sum_{{i,j} in E'} w'_ij x_ij
//! s.t. x_ij <= y_i, x_ij <= y_j   for {i,j} in E'
//!      sum_i y_i <= 1
//!      x, y >= 0
//! ```
//!
//! Its optimum equals the maximum density `w(E(V''))/|V''|`. Scaling the Gram
//! entries of a block by the block's total squared norm gives a feasible point,
//! which bounds the SDP mass the block can hold.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sdp::SdpSolution;

/// Edge variables `(i, j, x_ij)` with `i < j`, in block-local indices.
pub type EdgeValues = Vec<(usize, usize, f64)>;

/// Block masses at or below this are treated as no mass at all.
pub const ZERO_MASS: f64 = 1e-14;

/// `y_i = 1/|S|` on `subset`, `x_ij = 1/|S|` on edges inside it.
pub fn lp_point_from_subset(graph: &Graph, subset: &[usize]) -> (EdgeValues, Vec<f64>) {
    let n = graph.n();
    let mut y = vec![0.0; n];
    let mut member = vec![false; n];
    let share = 1.0 / subset.len().max(1) as f64;
    for &v in subset {
        y[v] = share;
        member[v] = true;
    }
    let x = graph
        .edges()
        .map(|(i, j, _)| (i, j, if member[i] && member[j] { share } else { 0.0 }))
        .collect();
    (x, y)
}

pub fn lp_objective(graph: &Graph, x: &[(usize, usize, f64)]) -> f64 {
    x.iter().map(|&(i, j, v)| graph.weight(i, j) * v).sum()
}

/// Largest violation of any LP constraint; 0 for a feasible point.
pub fn lp_violation(graph: &Graph, x: &[(usize, usize, f64)], y: &[f64]) -> f64 {
    let mut worst: f64 = 0.0;
    for &(i, j, v) in x {
        if graph.weight(i, j) > 0.0 {
            worst = worst.max(v - y[i]).max(v - y[j]);
        }
        worst = worst.max(-v);
    }
    for &yi in y {
        worst = worst.max(-yi);
    }
    worst.max(y.iter().sum::<f64>() - 1.0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LpCertificate {
    /// Global vertex ids of the block, in the order used for `x` and `y`.
    pub block: Vec<usize>,
    /// `sum_{i in block} <X_i, X_i>`.
    pub mass: f64,
    pub x: EdgeValues,
    pub y: Vec<f64>,
    /// LP objective of `(x, y)`.
    pub objective: f64,
    /// Max LP constraint violation of `(x, y)`.
    pub residual: f64,
    /// Objective of the unclamped point `x_ij = <X_i,X_j>/mass`.
    pub raw_objective: f64,
    /// Violation of the unclamped point; reflects the SDP solver tolerance
    /// divided by `mass`.
    pub raw_residual: f64,
}

impl LpCertificate {
    /// Unordered SDP mass on the block edges: `sum_{i<j} A_ij <X_i, X_j>`.
    pub fn sdp_edge_mass(&self) -> f64 {
        self.raw_objective * self.mass
    }
}

/// Builds the LP point `x_ij = <X_i,X_j>/M`, `y_i = |X_i|^2/M` with
/// `M = sum_{i in block} |X_i|^2` on the subgraph of `graph` induced by
/// `block`.
///
/// The Gram entries only satisfy the SDP constraints up to the solver
/// tolerance, so `x_ij` is clamped into `[0, min(y_i, y_j)]`; the unclamped
/// objective and violation are reported as `raw_*`.
pub fn sdp_to_lp_certificate(sol: &SdpSolution, graph: &Graph, block: &[usize]) -> Result<LpCertificate> {
    if graph.n() != sol.n() {
        return Err(Error::DimensionMismatch {
            expected: sol.n(),
            found: graph.n(),
        });
    }
    let gram = &sol.gram;
    let norm = |v: usize| gram[(v + 1, v + 1)];
    let mass: f64 = block.iter().map(|&v| norm(v)).sum();
    if !(mass > ZERO_MASS) {
        return Err(Error::ZeroMass);
    }
    let sub = graph.induced(block);
    let y: Vec<f64> = block.iter().map(|&v| norm(v).max(0.0) / mass).collect();
    let raw_y: Vec<f64> = block.iter().map(|&v| norm(v) / mass).collect();
    let mut x = Vec::new();
    let mut raw_x = Vec::new();
    for (a, b, _) in sub.edges() {
        let (i, j) = (block[a], block[b]);
        let value = gram[(i + 1, j + 1)];
        raw_x.push((a, b, value / mass));
        let clamped = value.max(0.0).min(norm(i)).min(norm(j)).max(0.0);
        x.push((a, b, clamped / mass));
    }
    Ok(LpCertificate {
        block: block.to_vec(),
        mass,
        objective: lp_objective(&sub, &x),
        residual: lp_violation(&sub, &x, &y),
        raw_objective: lp_objective(&sub, &raw_x),
        raw_residual: lp_violation(&sub, &raw_x, &raw_y),
        x,
        y,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sdp::SdpSolution;

    #[test]
    fn subset_point_is_feasible_and_hits_density() {
        let g = Graph::complete(4);
        let (x, y) = lp_point_from_subset(&g, &[0, 1, 2, 3]);
        assert_eq!(lp_violation(&g, &x, &y), 0.0);
        assert_eq!(lp_objective(&g, &x), 1.5);
    }

    #[test]
    fn integral_solution_has_zero_mass_off_s() {
        let g = Graph::complete(6);
        let sol = SdpSolution::integral(&g, &[0, 1, 2]);
        assert!(matches!(sdp_to_lp_certificate(&sol, &g, &[3, 4, 5]), Err(Error::ZeroMass)));
    }

    #[test]
    fn uniform_block_gives_uniform_y() {
        let g = Graph::complete(4);
        let sol = SdpSolution::integral(&g, &[0, 1, 2, 3]);
        let cert = sdp_to_lp_certificate(&sol, &g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(cert.y, vec![0.25; 4]);
        assert_eq!(cert.residual, 0.0);
        assert_eq!(cert.raw_residual, 0.0);
        assert_eq!(cert.y.iter().sum::<f64>(), 1.0);
        assert_eq!(cert.objective, 1.5);
    }
}
