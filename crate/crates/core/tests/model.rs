use clique_sdp::model::{
    apply_adversary, build_expander, build_low_density_block, certify_expander, eligible_edges, expander_spectrum,
    generate, AdversaryPolicy, ModelParams,
};
use clique_sdp::oracles::densest::densest_subgraph_enumerate;
use clique_sdp::oracles::max_clique::brute_force_max_clique;
use clique_sdp::{Error, Graph};
use nalgebra::{DMatrix, SymmetricEigen};

fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n, 1.0)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

#[test]
fn four_cycle_spectrum_from_eigendecomposition() {
    let c4 = cycle(4);
    let eig = SymmetricEigen::new(c4.loopless_adjacency());
    let mut values: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    values.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let cert = expander_spectrum(&c4, 2).unwrap();
    for (a, b) in values.iter().zip(&cert.eigenvalues) {
        assert!((a - b).abs() < 1e-12);
    }
    assert!((cert.second - 2.0).abs() < 1e-12);
    assert!(!certify_expander(&c4, 2, 1.5));
}

#[test]
fn two_regular_on_four_vertices_cannot_meet_the_bound() {
    // The only 2-regular simple graph on 4 vertices is the 4-cycle.
    let err = build_expander(4, 2, 1.5, 7, 50).unwrap_err();
    assert!(matches!(err, Error::InfeasibleParams(_) | Error::AttemptsExhausted { .. }), "{err:?}");
}

#[test]
fn complete_graph_is_its_own_expander() {
    let g = build_expander(5, 4, 1.0, 0, 1).unwrap();
    assert_eq!(g, Graph::complete(5));
    assert!(certify_expander(&g, 4, 1.0));
}

#[test]
fn vacuous_lambda_gives_regular_graph() {
    let g = build_expander(10, 3, 3.0, 3, 10).unwrap();
    for v in 0..10 {
        assert_eq!(g.neighbors(v).count(), 3);
    }
}

#[test]
fn low_density_blocks_respect_density_by_enumeration() {
    let g = build_low_density_block(6, 0.1, 5, 1);
    assert!(densest_subgraph_enumerate(&g).density <= 0.5 + 1e-12);
    for v in 0..6 {
        assert!(g.neighbors(v).count() <= 1);
    }

    let g = build_low_density_block(18, 0.2, 10, 2);
    let best = brute_density(&g);
    assert!(best <= 2.0 + 1e-12, "density {best}");
    assert_eq!(build_low_density_block(0, 0.3, 4, 0).n(), 0);
}

// Independent subset enumeration: sum of ordered adjacency entries over 2|U|.
fn brute_density(g: &Graph) -> f64 {
    let n = g.n();
    let mut best = 0.0f64;
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut sum = 0.0;
        for &i in &members {
            for &j in &members {
                if i != j {
                    sum += g.weight(i, j);
                }
            }
        }
        best = best.max(sum / (2.0 * members.len() as f64));
    }
    best
}

#[test]
fn boundary_edge_count_is_binomial() {
    let (n, k, p) = (200usize, 40usize, 0.1);
    let mean = p * (k * (n - k)) as f64;
    let sd = (mean * (1.0 - p)).sqrt();
    let mut total = 0.0;
    let seeds = 100;
    for seed in 0..seeds {
        let params = ModelParams::planted(n, k, p)
            .with_expanders(1, 20, 4, 4.0)
            .with_low_density(1, 0.1)
            .with_seed(seed);
        let inst = generate(&params).unwrap();
        let in_s = inst.partition.in_s(n);
        let count = inst
            .graph
            .edges()
            .filter(|&(i, j, _)| i != j && in_s[i] != in_s[j])
            .count() as f64;
        assert!((count - mean).abs() <= 4.0 * sd, "seed {seed}: {count} vs {mean} +- {sd}");
        total += count;
    }
    let grand = total / seeds as f64;
    assert!((grand - mean).abs() <= 4.0 * sd / (seeds as f64).sqrt());
}

#[test]
fn planted_set_is_the_maximum_clique() {
    for seed in 0..5 {
        let inst = generate(&ModelParams::planted(30, 8, 0.1).with_seed(seed)).unwrap();
        let (size, witness) = brute_force_max_clique(&inst.graph, 40).unwrap();
        assert_eq!(size, 8);
        assert_eq!(&witness, inst.s());
    }
}

#[test]
fn full_deletion_leaves_only_the_clique() {
    let params = ModelParams::planted(40, 8, 0.3)
        .with_seed(9)
        .with_adversary(AdversaryPolicy::random_fraction(1.0, 1));
    let inst = generate(&params).unwrap();
    assert_eq!(inst.graph.edge_count(), 8 * 7 / 2);
    assert!(eligible_edges(&inst).is_empty());
    let (size, witness) = brute_force_max_clique(&inst.graph, 40).unwrap();
    assert_eq!((size, &witness), (8, inst.s()));
}

#[test]
fn adversary_is_monotone_and_replayable() {
    let params = ModelParams::planted(60, 10, 0.2).with_seed(4);
    let clean = generate(&params).unwrap();
    assert_eq!(apply_adversary(&clean, &AdversaryPolicy::none()).graph, clean.graph);
    let in_s = clean.partition.in_s(60);
    let boundary = clean.graph.edges().filter(|&(i, j, _)| in_s[i] != in_s[j]).count();
    let cases = [
        (AdversaryPolicy::random_fraction(0.5, 3), eligible_edges(&clean).len()),
        (AdversaryPolicy::targeted_boundary(0.5, 3), boundary),
    ];
    for (policy, pool) in cases {
        let a = apply_adversary(&clean, &policy);
        let b = apply_adversary(&clean, &policy);
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.pre_adversary, clean.graph);
        let removed = clean.graph.edge_count() - a.graph.edge_count();
        assert_eq!(removed, (0.5 * pool as f64).round() as usize);
        for (i, j, w) in a.graph.edges() {
            assert_eq!(clean.graph.weight(i, j), w);
        }
        assert!(a.graph.is_clique(a.s()));
    }
}

#[test]
fn instance_json_round_trip_keeps_spectrum() {
    let params = ModelParams::planted(60, 10, 0.1)
        .with_expanders(2, 12, 3, 3.0)
        .with_low_density(1, 0.2)
        .with_seed(21);
    let inst = generate(&params).unwrap();
    let back = clique_sdp::model::PlantedInstance::from_json(&inst.to_json()).unwrap();
    assert_eq!(back, inst);
    for block in &inst.partition.lambdas {
        let before = expander_spectrum(&inst.graph.induced(block), 3).unwrap();
        let after = expander_spectrum(&back.graph.induced(block), 3).unwrap();
        assert_eq!(before, after);
    }
}

#[test]
fn induced_block_matches_adjacency_submatrix() {
    let inst = generate(&ModelParams::planted(30, 6, 0.3).with_seed(2)).unwrap();
    let block = &inst.partition.s;
    let sub = inst.graph.induced(block);
    let expected = DMatrix::from_fn(block.len(), block.len(), |a, b| inst.graph.weight(block[a], block[b]));
    assert_eq!(sub.weights(), &expected);
}
