use nalgebra::DMatrix;

use crate::graph::Graph;

/// Checks `sum_{i,j in block} A_ij G_ij <= (k d / s + lambda) sum_i G_ii + tol`
/// where `A` is the loop-free block adjacency, `s` its size and `gram` the
/// Gram matrix of the block's vectors (block-local indices, no anchor row).
pub fn expander_sdp_bound_check(block: &Graph, d: usize, lambda: f64, k: usize, gram: &DMatrix<f64>, tol: f64) -> bool {
    let s = block.n();
    assert_eq!(gram.nrows(), s, "gram must be restricted to the block");
    if s == 0 {
        return true;
    }
    let lhs = block.loopless_adjacency().dot(gram);
    let rhs = (k as f64 * d as f64 / s as f64 + lambda) * gram.trace();
    lhs <= rhs + tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_expander;

    #[test]
    fn zero_vectors_pass() {
        let g = build_expander(20, 3, 3.0, 1, 100).unwrap();
        assert!(expander_sdp_bound_check(&g, 3, 3.0, 10, &DMatrix::zeros(20, 20), 0.0));
    }

    #[test]
    fn uniform_mass_passes_with_slack() {
        let lambda = 2.0 * 2f64.sqrt() * 1.1;
        let g = build_expander(20, 3, lambda, 2, 1000).unwrap();
        // k units of mass spread evenly: G = (k/s^2) J, trace k/s.
        let (k, s) = (10.0, 20.0);
        let gram = DMatrix::from_element(20, 20, k / (s * s));
        let lhs = 20.0 * 3.0 * k / (s * s);
        let rhs = (k * 3.0 / s + lambda) * k / s;
        assert!(lhs < rhs);
        assert!(expander_sdp_bound_check(&g, 3, lambda, 10, &gram, 0.0));
    }
}
