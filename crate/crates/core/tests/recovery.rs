use clique_sdp::model::{generate, ModelParams};
use clique_sdp::oracles::xi::estimate_xi;
use clique_sdp::recovery::{
    certify_clique, compute_params, greedy_complete, recover, recover_graph, threshold_select, verify_clustering,
    FailureReason,
};
use clique_sdp::sdp::{solve_sdp, SdpSolution, SolverConfig};
use clique_sdp::{Error, Graph};
use nalgebra::DMatrix;
use proptest::prelude::*;

#[test]
fn parameter_arithmetic() {
    let rp = compute_params(&ModelParams::planted(10_000, 400, 0.01), 1.0).unwrap();
    let psi = 4.0 * 1.0 * (10_000.0 * 0.01) / (400.0f64.powi(2) * 0.94f64.powi(2));
    assert!((rp.psi - psi).abs() <= 1e-15 * psi);
    assert!((rp.psi - 2.8293e-3).abs() < 1e-7);
    assert!((rp.nu - 2.5464e-2).abs() < 1e-6);
    assert!((rp.threshold - 0.98227).abs() < 1e-5);
    assert!(rp.valid);

    assert!(matches!(
        compute_params(&ModelParams::planted(100, 10, 0.2), 1.0),
        Err(Error::InvalidDenominator(_))
    ));
    let zero = compute_params(&ModelParams::planted(100, 10, 0.05), 0.0).unwrap();
    assert_eq!(zero.psi, 0.0);
    assert!(!zero.valid);
}

#[test]
fn block_terms_enter_psi_and_denominator() {
    let params = ModelParams::planted(1000, 100, 0.01)
        .with_expanders(2, 50, 4, 3.0)
        .with_low_density(1, 0.05);
    let rp = compute_params(&params, 2.0).unwrap();
    let den = 1.0 - 0.06 - 0.1 - 4.0 / 50.0 - 3.0 / 100.0;
    assert!((rp.denominator - den).abs() < 1e-15);
    let psi = 4.0 * 4.0 * 10.0 * 4.0 / (10_000.0 * den * den);
    assert!((rp.psi - psi).abs() <= 1e-14 * psi);
}

#[test]
fn integral_solution_recovers_exactly() {
    let params = ModelParams::planted(80, 30, 0.05).with_seed(4);
    let inst = generate(&params).unwrap();
    let rp = compute_params(&params, 1.5).unwrap();
    assert!(rp.valid);
    let sol = SdpSolution::integral(&inst.graph, inst.s());
    assert_eq!(&threshold_select(&sol, &rp), inst.s());
    let result = recover(&inst, &sol, &rp);
    assert_eq!(result.q.as_ref(), Some(inst.s()));
    assert_eq!(result.success, Some(true));
    assert!(result.t_is_clique);
    assert_eq!(result.failure_reason, None);
    assert_eq!(result.t_overlap, Some(30));
    assert!(verify_clustering(&sol, inst.s(), 0.0, 0.0).unwrap());

    let blind = recover_graph(&inst.graph, &sol, &rp);
    assert_eq!(blind.success, None);
    assert_eq!(blind.q.as_ref(), Some(inst.s()));
    let json: serde_json::Value = serde_json::from_str(&result.to_json()).unwrap();
    assert_eq!(json["T"].as_array().unwrap().len(), 30);
    assert!(json["Q"].is_array());
}

#[test]
fn half_norms_give_empty_threshold_set() {
    let g = Graph::empty(5);
    let mut gram = DMatrix::from_element(6, 6, 0.0);
    for i in 0..6 {
        gram[(i, i)] = 0.5;
    }
    gram[(0, 0)] = 1.0;
    let sol = SdpSolution::from_gram(&g, 2, gram).unwrap();
    let mut rp = compute_params(&ModelParams::planted(5, 2, 0.01), 0.1).unwrap();
    rp.threshold = 0.98;
    assert!(threshold_select(&sol, &rp).is_empty());
    let result = recover_graph(&g, &sol, &rp);
    assert_eq!(result.failure_reason, Some(FailureReason::EmptyT));
    assert_eq!(result.q, None);
}

#[test]
fn invalid_nu_skips_rounding() {
    let params = ModelParams::planted(60, 10, 0.1).with_seed(1);
    let inst = generate(&params).unwrap();
    let rp = compute_params(&params, 3.0).unwrap();
    assert!(rp.nu >= 1.0);
    let result = recover(&inst, &SdpSolution::integral(&inst.graph, inst.s()), &rp);
    assert_eq!(result.failure_reason, Some(FailureReason::InvalidNu));
    assert!(result.t.is_empty());
    assert_eq!(result.success, Some(false));
}

#[test]
fn clique_certificates() {
    let mut triangle = Graph::empty(4);
    for (i, j) in [(0, 1), (1, 2), (0, 2)] {
        triangle.set_weight(i, j, 1.0);
    }
    assert!(certify_clique(&triangle, &[]));
    assert!(certify_clique(&triangle, &[3]));
    assert!(certify_clique(&triangle, &[0, 1, 2]));
    let mut path = Graph::empty(3);
    path.set_weight(0, 1, 1.0);
    path.set_weight(1, 2, 1.0);
    assert!(!certify_clique(&path, &[0, 2]));
    assert!(matches!(greedy_complete(&path, &[0, 2]), Err(Error::NotAClique)));
}

#[test]
fn greedy_completion() {
    let mut g = Graph::empty(10);
    let clique = [2, 3, 5, 7];
    for (a, &i) in clique.iter().enumerate() {
        for &j in &clique[a + 1..] {
            g.set_weight(i, j, 1.0);
        }
    }
    assert_eq!(greedy_complete(&g, &[5]).unwrap(), clique.to_vec());
    assert_eq!(greedy_complete(&g, &[3, 7]).unwrap(), clique.to_vec());
    // Empty T: greedy maximal clique in index order.
    assert_eq!(greedy_complete(&g, &[]).unwrap(), vec![0]);

    for seed in 0..20 {
        let inst = generate(&ModelParams::planted(100, 20, 0.1).with_seed(seed)).unwrap();
        let s = inst.s();
        let outside_full = (0..100).any(|v| !s.contains(&v) && s.iter().all(|&u| inst.graph.has_edge(u, v)));
        let q = greedy_complete(&inst.graph, s).unwrap();
        assert_eq!(&q == s, !outside_full);
    }
}

#[test]
fn clustering_checks() {
    let params = ModelParams::planted(40, 10, 0.1).with_seed(6);
    let inst = generate(&params).unwrap();
    let sol = solve_sdp(&inst.graph, 10, &SolverConfig::default()).unwrap();
    let heavy: Vec<usize> = (0..40).filter(|&i| sol.norm2(i) >= 2.0 / 3.0).collect();
    assert!(verify_clustering(&sol, &heavy, 1.0 / 3.0, 1e-6).unwrap());
    let light: Vec<usize> = (0..40).filter(|&i| sol.norm2(i) < 0.5).collect();
    assert!(matches!(
        verify_clustering(&sol, &light, 0.1, 0.0),
        Err(Error::PreconditionViolated(_))
    ));
}

#[test]
fn overlap_and_clustering_over_seeds() {
    let xi = estimate_xi(200, 0.05, 100, 91).unwrap();
    let seeds = 50;
    // At k = 40 nu > 1 and the overlap bound is vacuous; k = 60 is inside the regime.
    for k in [40, 60] {
        let mut overlap_ok = 0;
        for seed in 0..seeds {
            let params = ModelParams::planted(200, k, 0.05).with_seed(1000 + seed);
            let inst = generate(&params).unwrap();
            let rp = compute_params(&params, xi).unwrap();
            assert_eq!(rp.valid, k == 60);
            let sol = solve_sdp(&inst.graph, k, &SolverConfig::default()).unwrap();
            let t = threshold_select(&sol, &rp);
            let overlap = t.iter().filter(|v| inst.s().contains(v)).count();
            if overlap as f64 >= (1.0 - 1.0 / rp.alpha) * k as f64 {
                overlap_ok += 1;
            }
            if rp.valid && !t.is_empty() {
                assert!(verify_clustering(&sol, &t, rp.nu.sqrt() / 9.0, 1e-6).unwrap());
            }
        }
        assert!(overlap_ok as f64 >= 0.9 * seeds as f64, "k = {k}: {overlap_ok}/{seeds}");
    }
}

proptest! {
    #[test]
    fn threshold_identities(n in 50usize..5000, frac in 0.05f64..0.9, p in 0.001f64..0.15, xi in 0.1f64..4.0) {
        let k = ((n as f64 * frac) as usize).max(1);
        let rp = compute_params(&ModelParams::planted(n, k, p), xi).unwrap();
        prop_assert!((rp.nu - 9.0 * rp.psi).abs() <= 1e-12 * rp.nu);
        prop_assert!((rp.alpha * rp.alpha * rp.nu - 1.0).abs() < 1e-12);
        prop_assert!((rp.threshold - (1.0 - 1.0 / (9.0 * rp.alpha))).abs() < 1e-12);
        prop_assert_eq!(rp.valid, rp.nu > 0.0 && rp.nu < 1.0);
    }
}
