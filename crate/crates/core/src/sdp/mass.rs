use serde::{Deserialize, Serialize};

use super::SdpSolution;
use crate::model::PlantedInstance;
use crate::oracles::centered::build_centered_matrix;

/// Split of `sum_{i,j} A_ij <X_i, X_j>` (post-adversary `A`, ordered pairs,
/// diagonal included) by where the pair sits in the partition.
///
/// Interior terms include the diagonal of their block. The parts add up to
/// `total`, which is twice the objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockMassReport {
    /// `sum_{i,j in S}`.
    pub clique: f64,
    /// `2 sum_{i in S, j notin S}`.
    pub boundary: f64,
    /// Per Lambda block: `sum_{i in L, j in (V \ S) \ L}`.
    pub lambda_boundary: Vec<f64>,
    /// Per Lambda block: `sum_{i,j in L}`.
    pub lambda_interior: Vec<f64>,
    pub pi_boundary: Vec<f64>,
    pub pi_interior: Vec<f64>,
    /// `sum_{i in R, j in (V \ S), j != i}` over remainder vertices `R`.
    pub remainder_boundary: f64,
    /// `sum_{i in R} A_ii G_ii`.
    pub remainder_diagonal: f64,
    /// `sum_{i,j} B_ij G_ij` with the centered matrix `B` at the instance's `p`.
    pub centered: f64,
    pub total: f64,
    /// `E_{i in S} |X_i|^2`.
    pub mean_norm_s: f64,
}

impl BlockMassReport {
    pub fn sum_of_parts(&self) -> f64 {
        self.clique
            + self.boundary
            + self.lambda_boundary.iter().sum::<f64>()
            + self.lambda_interior.iter().sum::<f64>()
            + self.pi_boundary.iter().sum::<f64>()
            + self.pi_interior.iter().sum::<f64>()
            + self.remainder_boundary
            + self.remainder_diagonal
    }
}

pub fn sdp_mass_decomposition(sol: &SdpSolution, instance: &PlantedInstance) -> BlockMassReport {
    let n = instance.n();
    let a = instance.graph.weights();
    let part = &instance.partition;
    let labels = part.labels(n);
    let in_s = part.in_s(n);
    let term = |i: usize, j: usize| a[(i, j)] * sol.inner(i, j);

    let interior = |block: &[usize]| -> f64 { block.iter().flat_map(|&i| block.iter().map(move |&j| (i, j))).map(|(i, j)| term(i, j)).sum() };
    let outward = |block: &[usize]| -> f64 {
        block
            .iter()
            .map(|&i| (0..n).filter(|&j| !in_s[j] && labels[j] != labels[i]).map(|j| term(i, j)).sum::<f64>())
            .sum()
    };

    let mut boundary = 0.0;
    for &i in &part.s {
        for j in (0..n).filter(|&j| !in_s[j]) {
            boundary += term(i, j);
        }
    }
    let centered = build_centered_matrix(instance, instance.params.p).inner(&sol.vertex_gram());
    let total = a.dot(&sol.vertex_gram());
    let k = part.s.len().max(1) as f64;
    BlockMassReport {
        clique: interior(&part.s),
        boundary: 2.0 * boundary,
        lambda_boundary: part.lambdas.iter().map(|b| outward(b)).collect(),
        lambda_interior: part.lambdas.iter().map(|b| interior(b)).collect(),
        pi_boundary: part.pis.iter().map(|b| outward(b)).collect(),
        pi_interior: part.pis.iter().map(|b| interior(b)).collect(),
        remainder_boundary: outward(&part.remainder),
        remainder_diagonal: part.remainder.iter().map(|&i| term(i, i)).sum(),
        centered,
        total,
        mean_norm_s: part.s.iter().map(|&i| sol.norm2(i)).sum::<f64>() / k,
    }
}

/// A checked inequality `lhs <= rhs + tol`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl BoundCheck {
    fn new(lhs: f64, rhs: f64, tol: f64) -> Self {
        BoundCheck {
            lhs,
            rhs,
            holds: lhs <= rhs + tol,
        }
    }
}

/// `sum_{i,j in S} A_ij G_ij <= k^2 E_{i in S} G_ii`.
pub fn clique_mass_bound_holds(sol: &SdpSolution, instance: &PlantedInstance, tol: f64) -> BoundCheck {
    let report = sdp_mass_decomposition(sol, instance);
    let k = instance.s().len() as f64;
    BoundCheck::new(report.clique, k * k * report.mean_norm_s, tol)
}

/// `sum_{i in S, j notin S} G_ij <= 3 k^2 (1 - E_{i in S} G_ii)`.
pub fn boundary_mass_bound_holds(sol: &SdpSolution, instance: &PlantedInstance, tol: f64) -> BoundCheck {
    let n = instance.n();
    let in_s = instance.partition.in_s(n);
    let lhs: f64 = instance
        .s()
        .iter()
        .map(|&i| (0..n).filter(|&j| !in_s[j]).map(|j| sol.inner(i, j)).sum::<f64>())
        .sum();
    let k = instance.s().len() as f64;
    let mean = instance.s().iter().map(|&i| sol.norm2(i)).sum::<f64>() / k;
    BoundCheck::new(lhs, 3.0 * k * k * (1.0 - mean), tol)
}

/// `sum Abar_ij G_ij <= sum A_ij G_ij`: the adversary can only lower the value
/// of a fixed solution.
pub fn monotone_bound_holds(sol: &SdpSolution, instance: &PlantedInstance, tol: f64) -> BoundCheck {
    let g = sol.vertex_gram();
    BoundCheck::new(instance.graph.weights().dot(&g), instance.pre_adversary.weights().dot(&g), tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate, ModelParams};

    #[test]
    fn integral_solution_puts_everything_on_s() {
        let inst = generate(&ModelParams::planted(30, 6, 0.3).with_low_density(2, 0.3).with_seed(4)).unwrap();
        let sol = SdpSolution::integral(&inst.graph, inst.s());
        let report = sdp_mass_decomposition(&sol, &inst);
        assert_eq!(report.clique, 36.0);
        assert_eq!(report.total, 36.0);
        assert_eq!(report.sum_of_parts(), 36.0);
        assert_eq!(report.centered, 0.0);
        assert!(clique_mass_bound_holds(&sol, &inst, 0.0).holds);
        assert!(boundary_mass_bound_holds(&sol, &inst, 0.0).holds);
    }
}
