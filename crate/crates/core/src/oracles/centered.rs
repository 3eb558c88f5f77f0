use nalgebra::DMatrix;

use crate::error::Result;
use crate::model::PlantedInstance;
use crate::oracles::spectral::spectral_norm;

/// `B_ij = 0` when `i` and `j` lie in the same block (`S`, a Lambda or a Pi
/// block, or the same remainder vertex), and `A_ij - p` otherwise, where `A`
/// is the pre-adversary adjacency.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredMatrix {
    pub entries: DMatrix<f64>,
}

impl CenteredMatrix {
    pub fn spectral_norm(&self, tol: f64) -> Result<f64> {
        spectral_norm(&self.entries, tol)
    }

    /// `sum_{i,j} B_ij G_ij` for an `n x n` matrix `g` over the vertices.
    pub fn inner(&self, g: &DMatrix<f64>) -> f64 {
        self.entries.dot(g)
    }
}

pub fn build_centered_matrix(instance: &PlantedInstance, p: f64) -> CenteredMatrix {
    let n = instance.n();
    let labels = instance.partition.labels(n);
    let a = instance.pre_adversary.weights();
    let entries = DMatrix::from_fn(n, n, |i, j| {
        if labels[i] == labels[j] {
            0.0
        } else {
            a[(i, j)] - p
        }
    });
    CenteredMatrix { entries }
}
