//! Exact densest subgraph.
//!
//! Density of a vertex set `V'` is `sum_{i,j in V'} w({i,j}) / (2 |V'|)` with
//! the sum running over ordered off-diagonal pairs, i.e. the unordered edge
//! weight inside `V'` divided by `|V'|`. Self-loops are ignored throughout.
//!
//! The maximiser is found by Dinkelbach iteration over Goldberg's min-cut
//! network; a brute-force enumeration is kept for small graphs and the two
//! must agree. The LP value reported alongside is the objective of the
//! Charikar LP point built from the optimal subset, and
//! [`density_upper_bound_holds`] checks the matching dual (a fractional edge
//! orientation) independently.

use serde::{Deserialize, Serialize};

use super::flow::FlowNetwork;
use super::lp_certificate::{lp_objective, lp_point_from_subset};
use crate::graph::{Graph, VertexSet};

/// Largest vertex count for which the flow answer is re-derived by enumeration.
pub const ENUMERATION_LIMIT: usize = 18;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityCertificate {
    pub subset: VertexSet,
    pub density: f64,
    pub lp_value: f64,
}

/// Unordered off-diagonal edge weight inside `subset` over `|subset|`; 0 when empty.
pub fn subset_density(graph: &Graph, subset: &[usize]) -> f64 {
    if subset.is_empty() {
        return 0.0;
    }
    let mut sum = 0.0;
    for (a, &i) in subset.iter().enumerate() {
        for &j in &subset[a + 1..] {
            sum += graph.weight(i, j);
        }
    }
    sum / subset.len() as f64
}

fn edge_weight_inside(graph: &Graph, subset: &[usize]) -> f64 {
    subset_density(graph, subset) * subset.len() as f64
}

fn total_edge_weight(graph: &Graph) -> f64 {
    graph.edges().map(|(_, _, w)| w).sum()
}

/// Maximiser of `w(E(V')) - g |V'|` via one min cut on Goldberg's network.
fn max_excess_subset(graph: &Graph, g: f64, total: f64) -> VertexSet {
    let n = graph.n();
    let (source, sink) = (n, n + 1);
    let mut net = FlowNetwork::new(n + 2, 1e-12 * (1.0 + total));
    for v in 0..n {
        let deg = graph.degree(v) - 1.0;
        net.add_arc(source, v, total);
        net.add_arc(v, sink, (total + 2.0 * g - deg).max(0.0));
    }
    for (i, j, w) in graph.edges() {
        net.add_edge(i, j, w);
    }
    net.max_flow(source, sink);
    let side = net.source_side(source);
    (0..n).filter(|&v| side[v]).collect()
}

/// Exact densest subgraph by parametric min cuts. Cross-checked against
/// enumeration when `n <= ENUMERATION_LIMIT`.
pub fn densest_subgraph_exact(graph: &Graph) -> DensityCertificate {
    let cert = densest_subgraph_flow(graph);
    if graph.n() <= ENUMERATION_LIMIT {
        let brute = densest_subgraph_enumerate(graph);
        assert!(
            (brute.density - cert.density).abs() <= 1e-9 * (1.0 + brute.density),
            "flow density {} disagrees with enumeration {}",
            cert.density,
            brute.density
        );
    }
    cert
}

pub fn densest_subgraph_flow(graph: &Graph) -> DensityCertificate {
    let n = graph.n();
    let mut best: VertexSet = (0..n).collect();
    let total = total_edge_weight(graph);
    if n > 0 && total > 0.0 {
        let mut g = subset_density(graph, &best);
        loop {
            let candidate = max_excess_subset(graph, g, total);
            if candidate.is_empty() {
                break;
            }
            let excess = edge_weight_inside(graph, &candidate) - g * candidate.len() as f64;
            if excess <= 1e-12 * (1.0 + total) {
                break;
            }
            let next = subset_density(graph, &candidate);
            if next <= g {
                break;
            }
            best = candidate;
            g = next;
        }
    }
    certificate_for(graph, best)
}

/// Brute force over all nonempty subsets. Ties keep the smallest bitmask.
pub fn densest_subgraph_enumerate(graph: &Graph) -> DensityCertificate {
    let n = graph.n();
    assert!(n <= 24, "enumeration is limited to 24 vertices");
    if n == 0 {
        return certificate_for(graph, Vec::new());
    }
    let mut inside = vec![0.0f64; 1 << n];
    let mut best_mask = (1usize << n) - 1;
    let mut best_density = f64::NEG_INFINITY;
    for mask in 1usize..(1 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let mut add = 0.0;
        let mut bits = rest;
        while bits != 0 {
            let u = bits.trailing_zeros() as usize;
            add += graph.weight(v, u);
            bits &= bits - 1;
        }
        inside[mask] = inside[rest] + add;
        let density = inside[mask] / mask.count_ones() as f64;
        if density > best_density {
            best_density = density;
            best_mask = mask;
        }
    }
    let subset = (0..n).filter(|&v| best_mask >> v & 1 == 1).collect();
    certificate_for(graph, subset)
}

fn certificate_for(graph: &Graph, subset: VertexSet) -> DensityCertificate {
    let density = subset_density(graph, &subset);
    let lp_value = if subset.is_empty() {
        0.0
    } else {
        let (x, _) = lp_point_from_subset(graph, &subset);
        lp_objective(graph, &x)
    };
    DensityCertificate {
        subset,
        density,
        lp_value,
    }
}

/// True iff the edge weights can be split between endpoints so that no vertex
/// receives more than `bound`. By LP duality this holds exactly when every
/// subgraph has density at most `bound`.
pub fn density_upper_bound_holds(graph: &Graph, bound: f64) -> bool {
    let n = graph.n();
    let edges: Vec<_> = graph.edges().collect();
    let total: f64 = edges.iter().map(|e| e.2).sum();
    if total == 0.0 {
        return bound >= 0.0;
    }
    let m = edges.len();
    let (source, sink) = (n + m, n + m + 1);
    let mut net = FlowNetwork::new(n + m + 2, 1e-12 * (1.0 + total));
    for (e, &(i, j, w)) in edges.iter().enumerate() {
        net.add_arc(source, n + e, w);
        net.add_arc(n + e, i, f64::INFINITY);
        net.add_arc(n + e, j, f64::INFINITY);
    }
    for v in 0..n {
        net.add_arc(v, sink, bound.max(0.0));
    }
    net.max_flow(source, sink) >= total - 1e-9 * (1.0 + total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_density() {
        let cert = densest_subgraph_exact(&Graph::complete(4));
        assert_eq!(cert.density, 1.5);
        assert_eq!(cert.subset, vec![0, 1, 2, 3]);
        assert_eq!(cert.lp_value, 1.5);
    }

    #[test]
    fn star_density() {
        let star = Graph::from_edges(4, &[(0, 1, 1.0), (0, 2, 1.0), (0, 3, 1.0)]).unwrap();
        let cert = densest_subgraph_exact(&star);
        assert_eq!(cert.density, 0.75);
        assert_eq!(cert.subset, vec![0, 1, 2, 3]);
    }

    #[test]
    fn empty_graph_density() {
        assert_eq!(densest_subgraph_exact(&Graph::empty(5)).density, 0.0);
        assert_eq!(densest_subgraph_exact(&Graph::empty(0)).density, 0.0);
    }

    #[test]
    fn dense_core_beats_whole_graph() {
        // K4 on {0..3} with a pendant path 3-4-5.
        let mut edges = vec![(3, 4, 1.0), (4, 5, 1.0)];
        for i in 0..4 {
            for j in (i + 1)..4 {
                edges.push((i, j, 1.0));
            }
        }
        let g = Graph::from_edges(6, &edges).unwrap();
        let cert = densest_subgraph_flow(&g);
        assert_eq!(cert.subset, vec![0, 1, 2, 3]);
        assert_eq!(cert.density, 1.5);
        assert!(density_upper_bound_holds(&g, 1.5));
        assert!(!density_upper_bound_holds(&g, 1.49));
    }
}
