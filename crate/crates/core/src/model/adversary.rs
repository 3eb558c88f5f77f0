use rand::seq::SliceRandom;
use rand::Rng as _;

use super::instance::PlantedInstance;
use super::params::{AdversaryKind, AdversaryPolicy};
use crate::rng::rng_from_seed;

/// Edges the adversary may delete: positive-weight pairs not both inside `S`.
pub fn eligible_edges(instance: &PlantedInstance) -> Vec<(usize, usize)> {
    let in_s = instance.partition.in_s(instance.n());
    instance
        .graph
        .edges()
        .filter(|&(i, j, _)| !(in_s[i] && in_s[j]))
        .map(|(i, j, _)| (i, j))
        .collect()
}

/// Deletes edges of the current graph according to `policy`. Weights inside
/// `S` and the stored pre-adversary graph are never modified.
pub fn apply_adversary(instance: &PlantedInstance, policy: &AdversaryPolicy) -> PlantedInstance {
    let mut out = instance.clone();
    let mut rng = rng_from_seed(policy.seed);
    let doomed: Vec<(usize, usize)> = match policy.kind {
        AdversaryKind::None => Vec::new(),
        AdversaryKind::RandomFraction(phi) => {
            let mut edges = eligible_edges(instance);
            let count = (phi * edges.len() as f64).round() as usize;
            edges.shuffle(&mut rng);
            edges.truncate(count);
            edges
        }
        AdversaryKind::TargetedBoundary(phi) => {
            let n = instance.n();
            let in_s = instance.partition.in_s(n);
            let g = &instance.graph;
            let pull: Vec<usize> = (0..n)
                .map(|v| if in_s[v] { 0 } else { instance.s().iter().filter(|&&u| g.has_edge(u, v)).count() })
                .collect();
            // (outside vertex, S vertex, random tiebreak)
            let mut boundary: Vec<(usize, usize, u64)> = Vec::new();
            for v in (0..n).filter(|&v| !in_s[v]) {
                for &u in instance.s() {
                    if g.has_edge(u, v) {
                        boundary.push((v, u, rng.gen()));
                    }
                }
            }
            let count = (phi * boundary.len() as f64).round() as usize;
            boundary.sort_by_key(|&(v, _, tie)| (std::cmp::Reverse(pull[v]), v, tie));
            boundary.into_iter().take(count).map(|(v, u, _)| (u, v)).collect()
        }
    };
    for (i, j) in doomed {
        out.graph.set_weight(i, j, 0.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{generate, ModelParams};

    fn base() -> PlantedInstance {
        generate(&ModelParams::planted(40, 8, 0.3).with_seed(2)).unwrap()
    }

    #[test]
    fn none_is_identity() {
        let inst = base();
        assert_eq!(apply_adversary(&inst, &AdversaryPolicy::none()), inst);
    }

    #[test]
    fn full_deletion_leaves_only_the_clique() {
        let inst = base();
        let out = apply_adversary(&inst, &AdversaryPolicy::random_fraction(1.0, 3));
        assert_eq!(out.graph.edge_count(), 28);
        assert!(out.graph.is_clique(out.s()));
        assert_eq!(out.pre_adversary, inst.pre_adversary);
    }

    #[test]
    fn replayable() {
        let inst = base();
        let policy = AdversaryPolicy::random_fraction(0.5, 9);
        assert_eq!(apply_adversary(&inst, &policy), apply_adversary(&inst, &policy));
        let m = eligible_edges(&inst).len();
        let after = eligible_edges(&apply_adversary(&inst, &policy)).len();
        assert_eq!(m - after, (0.5 * m as f64).round() as usize);
    }

    #[test]
    fn targeted_hits_only_boundary() {
        let inst = base();
        let out = apply_adversary(&inst, &AdversaryPolicy::targeted_boundary(1.0, 1));
        let in_s = inst.partition.in_s(40);
        for (i, j, _) in inst.graph.edges() {
            let crossing = in_s[i] != in_s[j];
            assert_eq!(out.graph.has_edge(i, j), !crossing || (in_s[i] && in_s[j]));
        }
        out.validate().unwrap();
    }
}
