use rand::seq::SliceRandom;

use crate::graph::Graph;
use crate::oracles::densest::{densest_subgraph_exact, density_upper_bound_holds};
use crate::rng::rng_from_seed;

/// Degree cap that keeps every subset density at most `gamma * k` for edges
/// of weight `weight`: a subgraph of max degree `D` has density at most `D/2`.
pub fn degree_cap(gamma: f64, k: usize, weight: f64) -> usize {
    let cap = 2.0 * gamma * k as f64 / weight;
    // Guard against 2*0.1*5 = 0.999.. style rounding.
    (cap + 1e-9).floor().max(0.0) as usize
}

/// Unit-weight low-density block; see [`build_low_density_block_weighted`].
pub fn build_low_density_block(size: usize, gamma: f64, k: usize, seed: u64) -> Graph {
    build_low_density_block_weighted(size, gamma, k, 1.0, seed)
}

/// Random maximal graph on `size` vertices with every degree at most
/// [`degree_cap`]: all pairs are visited in a seeded random order and kept
/// while both endpoints are below the cap.
///
/// # Panics
///
/// If the densest-subgraph oracle finds a subset denser than `gamma * k`.
pub fn build_low_density_block_weighted(size: usize, gamma: f64, k: usize, weight: f64, seed: u64) -> Graph {
    let mut g = Graph::empty(size);
    let cap = degree_cap(gamma, k, weight);
    if cap == 0 || size < 2 {
        return g;
    }
    let mut pairs: Vec<(usize, usize)> = (0..size)
        .flat_map(|i| ((i + 1)..size).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(&mut rng_from_seed(seed));
    let mut degree = vec![0usize; size];
    for (i, j) in pairs {
        if degree[i] < cap && degree[j] < cap {
            g.set_weight(i, j, weight);
            degree[i] += 1;
            degree[j] += 1;
        }
    }
    let bound = gamma * k as f64;
    let cert = densest_subgraph_exact(&g);
    assert!(
        cert.density <= bound + 1e-9 && density_upper_bound_holds(&g, bound + 1e-9),
        "low-density block has density {} above {bound}",
        cert.density
    );
    g
}
