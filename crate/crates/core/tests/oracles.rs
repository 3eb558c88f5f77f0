use clique_sdp::model::{build_expander, generate, ModelParams};
use clique_sdp::oracles::centered::build_centered_matrix;
use clique_sdp::oracles::densest::{densest_subgraph_enumerate, densest_subgraph_exact, densest_subgraph_flow, subset_density};
use clique_sdp::oracles::expander_check::expander_sdp_bound_check;
use clique_sdp::oracles::lp_certificate::{lp_objective, lp_point_from_subset, lp_violation, sdp_to_lp_certificate};
use clique_sdp::oracles::max_clique::brute_force_max_clique;
use clique_sdp::oracles::spectral::{spectral_norm, spectral_norm_dense};
use clique_sdp::oracles::xi::{estimate_xi, estimate_xi_with_kappa, random_centered};
use clique_sdp::rng::rng_from_seed;
use clique_sdp::sdp::SdpSolution;
use clique_sdp::{Error, Graph};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;
use rand::Rng;

fn random_graph(n: usize, p: f64, seed: u64, weighted: bool) -> Graph {
    let mut rng = rng_from_seed(seed);
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen::<f64>() < p {
                let w = if weighted { rng.gen_range(1..4) as f64 } else { 1.0 };
                g.set_weight(i, j, w);
            }
        }
    }
    g
}

// Naive maximum clique by checking every subset from the largest size down.
fn naive_max_clique(g: &Graph) -> usize {
    let n = g.n();
    let mut best = 0;
    for mask in 0u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if members.iter().enumerate().all(|(a, &i)| members[a + 1..].iter().all(|&j| g.weight(i, j) > 0.0)) {
            best = size;
        }
    }
    best
}

// Independent subset enumeration of the maximum density, as an exact rational
// `(2 * edge weight, size)` compared by cross-multiplication.
fn naive_density(g: &Graph) -> f64 {
    let n = g.n();
    let mut best = (0.0f64, 1.0f64);
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut ordered = 0.0;
        for &i in &members {
            for &j in &members {
                if i != j {
                    ordered += g.weight(i, j);
                }
            }
        }
        let size = members.len() as f64;
        if ordered * best.1 > best.0 * size {
            best = (ordered, size);
        }
    }
    best.0 / (2.0 * best.1)
}

#[test]
fn max_clique_small_cases() {
    let mut triangle = Graph::empty(3);
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        triangle.set_weight(i, j, 1.0);
    }
    assert_eq!(brute_force_max_clique(&triangle, 40).unwrap().0, 3);
    let mut c5 = Graph::empty(5);
    for i in 0..5 {
        c5.set_weight(i, (i + 1) % 5, 1.0);
    }
    assert_eq!(brute_force_max_clique(&c5, 40).unwrap().0, 2);
    assert!(matches!(brute_force_max_clique(&Graph::empty(41), 40), Err(Error::TooLarge { .. })));
}

#[test]
fn max_clique_matches_naive_enumeration() {
    for seed in 0..30 {
        let n = 8 + (seed as usize % 13);
        let p = [0.2, 0.5, 0.8][seed as usize % 3];
        let g = random_graph(n, p, seed, false);
        let (size, witness) = brute_force_max_clique(&g, 40).unwrap();
        assert_eq!(size, naive_max_clique(&g), "seed {seed}");
        assert_eq!(witness.len(), size);
        assert!(g.is_clique(&witness));
    }
}

#[test]
fn densest_small_cases() {
    assert_eq!(densest_subgraph_exact(&Graph::complete(4)).density, 1.5);
    let mut star = Graph::empty(4);
    for leaf in 1..4 {
        star.set_weight(0, leaf, 1.0);
    }
    let cert = densest_subgraph_exact(&star);
    assert_eq!(cert.density, 0.75);
    assert_eq!(cert.subset, vec![0, 1, 2, 3]);
    assert_eq!(densest_subgraph_exact(&Graph::empty(5)).density, 0.0);
}

#[test]
fn densest_flow_matches_enumeration() {
    for seed in 0..40 {
        let n = 2 + (seed as usize % 17);
        let g = random_graph(n, 0.15 + 0.02 * (seed % 20) as f64, 100 + seed, seed % 2 == 1);
        let truth = naive_density(&g);
        let flow = densest_subgraph_flow(&g);
        let exact = densest_subgraph_exact(&g);
        let enumerated = densest_subgraph_enumerate(&g);
        assert_eq!(exact.density, enumerated.density, "seed {seed}");
        assert!((flow.density - truth).abs() < 1e-12, "seed {seed}: {} vs {truth}", flow.density);
        assert!((enumerated.density - truth).abs() < 1e-12, "seed {seed}");
        assert!((subset_density(&g, &flow.subset) - flow.density).abs() < 1e-12);
    }
}

#[test]
fn spectral_norm_small_cases() {
    let swap = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    assert!((spectral_norm(&swap, 1e-12).unwrap() - 1.0).abs() < 1e-12);
    assert!((spectral_norm(&(swap * 2.0), 1e-12).unwrap() - 2.0).abs() < 1e-12);
    assert_eq!(spectral_norm(&DMatrix::zeros(5, 5), 1e-12).unwrap(), 0.0);
    assert!(matches!(spectral_norm(&DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 2.0, 0.0]), 1e-9), Err(Error::NotSymmetric)));
}

#[test]
fn lanczos_matches_dense_eigendecomposition() {
    for (seed, n) in [(1u64, 20usize), (2, 75), (3, 150), (4, 200)] {
        let m = random_centered(n, 0.1 + 0.1 * seed as f64, seed);
        let eig = SymmetricEigen::new(m.clone());
        let truth = eig.eigenvalues.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let fast = spectral_norm(&m, 1e-10).unwrap();
        assert!((fast - truth).abs() <= 1e-8 * truth, "n {n}: {fast} vs {truth}");
        assert!((spectral_norm_dense(&m).unwrap() - truth).abs() <= 1e-10 * truth);
    }
}

#[test]
fn centered_matrix_off_block_mean_is_near_zero() {
    let p = 0.2;
    let inst = generate(&ModelParams::planted(150, 20, p).with_low_density(2, 0.1).with_seed(8)).unwrap();
    let b = build_centered_matrix(&inst, p);
    let labels = inst.partition.labels(150);
    let mut count = 0.0;
    let mut sum = 0.0;
    for i in 0..150 {
        for j in (i + 1)..150 {
            if labels[i] != labels[j] {
                count += 1.0;
                sum += b.entries[(i, j)];
            }
        }
    }
    let sd = (count * p * (1.0 - p)).sqrt();
    assert!(sum.abs() <= 4.0 * sd, "{sum} vs 4 sd = {}", 4.0 * sd);
}

#[test]
fn centered_matrix_with_all_cross_edges() {
    let mut inst = generate(&ModelParams::planted(20, 5, 0.3).with_seed(1)).unwrap();
    let labels = inst.partition.labels(20);
    for i in 0..20 {
        for j in (i + 1)..20 {
            if labels[i] != labels[j] {
                inst.pre_adversary.set_weight(i, j, 1.0);
            }
        }
    }
    let b = build_centered_matrix(&inst, 0.3);
    for i in 0..20 {
        for j in 0..20 {
            let expected = if labels[i] == labels[j] { 0.0 } else { 0.7 };
            assert!((b.entries[(i, j)] - expected).abs() < 1e-15);
        }
    }
}

#[test]
fn xi_estimates() {
    let xi = estimate_xi(500, 0.5, 50, 0).unwrap();
    assert!((1.2..=1.7).contains(&xi), "xi = {xi}");
    assert_eq!(estimate_xi(200, 0.3, 30, 5).unwrap(), estimate_xi(200, 0.3, 30, 5).unwrap());
    let degenerate = estimate_xi(500, 1.0 - 1e-12, 30, 1).unwrap();
    assert!(degenerate < 1e-3, "xi = {degenerate}");
    assert!(matches!(estimate_xi_with_kappa(100, 0.01, 30, 0, 1.0), Err(Error::RegimeViolation { .. })));
    assert!(matches!(estimate_xi(100, 0.5, 10, 0), Err(Error::InvalidParams(_))));
}

#[test]
fn expander_bound_on_extreme_grams() {
    let lambda = 2.0 * 2f64.sqrt() * 1.1;
    let g = build_expander(20, 3, lambda, 5, 1000).unwrap();
    // Rank one along a nontrivial eigenvector: A.G = mu |v|^2 with |mu| <= lambda.
    let eig = SymmetricEigen::new(g.loopless_adjacency());
    let top = eig.eigenvalues.imax();
    for c in 0..20 {
        if c == top {
            continue;
        }
        let v = eig.eigenvectors.column(c);
        let gram = &v * v.transpose();
        assert!(expander_sdp_bound_check(&g, 3, lambda, 0, &gram, 1e-12));
    }
    // All ones: A.G = d s, so it fails once lambda < d and the k d / s term is absent.
    let ones = DMatrix::from_element(20, 20, 1.0);
    assert!(!expander_sdp_bound_check(&g, 3, 2.5, 0, &ones, 0.0));
    assert!(expander_sdp_bound_check(&g, 3, 2.5, 4, &ones, 0.0));
}

#[test]
fn lp_certificate_on_uniform_and_integral_grams() {
    let params = ModelParams::planted(30, 6, 0.1).with_low_density(1, 0.3).with_seed(3);
    let inst = generate(&params).unwrap();
    let block = inst.partition.pis[0].clone();

    let integral = SdpSolution::integral(&inst.graph, inst.s());
    assert!(matches!(sdp_to_lp_certificate(&integral, &inst.graph, &block), Err(Error::ZeroMass)));

    let mut gram = DMatrix::zeros(31, 31);
    for &i in &block {
        for &j in &block {
            gram[(i + 1, j + 1)] = 0.25;
        }
    }
    let uniform = SdpSolution::from_gram(&inst.graph, 6, gram).unwrap();
    let cert = sdp_to_lp_certificate(&uniform, &inst.graph, &block).unwrap();
    let share = 1.0 / block.len() as f64;
    assert!(cert.y.iter().all(|&y| (y - share).abs() < 1e-15));
    assert!((cert.y.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    assert!(cert.residual <= 1e-12);
    let sub = inst.graph.induced(&block);
    assert!(cert.objective <= densest_subgraph_exact(&sub).density + 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn subset_points_are_feasible_with_density_objective(seed in 0u64..10_000, n in 1usize..12, mask in 1u32..4096) {
        let g = random_graph(n, 0.5, seed, true);
        let subset: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        prop_assume!(!subset.is_empty());
        let (x, y) = lp_point_from_subset(&g, &subset);
        prop_assert!(lp_violation(&g, &x, &y) <= 1e-15);
        prop_assert!((lp_objective(&g, &x) - subset_density(&g, &subset)).abs() < 1e-12);
        prop_assert!(subset_density(&g, &subset) <= densest_subgraph_exact(&g).density + 1e-12);
    }
}

#[test]
fn eigenvalues_of_integral_grams() {
    // Rank one with many exact zeros: spectrum {k + 1, 0, ..., 0}.
    for seed in 0..10 {
        let inst = generate(&ModelParams::planted(200, 60, 0.05).with_seed(seed)).unwrap();
        let gram = SdpSolution::integral(&inst.graph, inst.s()).gram;
        let values = clique_sdp::oracles::spectral::symmetric_eigenvalues(&gram);
        assert_eq!(values.len(), 201);
        assert!((values[0] - 61.0).abs() < 1e-12);
        assert!(values[1..].iter().all(|v| v.abs() < 1e-12));
        assert_eq!(clique_sdp::sdp::psd_violation(&gram), 0.0);
    }
    for seed in 0..5 {
        let m = random_centered(120, 0.3, seed);
        let mut reference: Vec<f64> = SymmetricEigen::new(m.clone()).eigenvalues.iter().copied().collect();
        reference.sort_by(|a, b| b.total_cmp(a));
        let values = clique_sdp::oracles::spectral::symmetric_eigenvalues(&m);
        for (a, b) in reference.iter().zip(&values) {
            assert!((a - b).abs() < 1e-10);
        }
    }
}
