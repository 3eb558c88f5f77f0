use rand::seq::SliceRandom;
use rand::Rng as _;

use super::adversary::apply_adversary;
use super::expander::build_expander;
use super::instance::{Partition, PlantedInstance};
use super::low_density::build_low_density_block_weighted;
use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from_seed};

const PARTITION_STREAM: u64 = 1;
const EDGE_STREAM: u64 = 2;
const EXPANDER_STREAM: u64 = 0x100;
const LOW_DENSITY_STREAM: u64 = 0x200;

/// Seeded uniformly random partition with the block sizes of `params`.
pub fn random_partition(params: &ModelParams) -> Partition {
    let mut perm: Vec<usize> = (0..params.n).collect();
    perm.shuffle(&mut rng_from_seed(derive_seed(params.seed, PARTITION_STREAM)));
    let pi_sizes = params.pi_block_sizes();
    let remainder_len = params.n - params.k - params.r * params.s - pi_sizes.iter().sum::<usize>();
    let mut rest = perm.as_slice();
    let mut take = |m: usize| {
        let (head, tail) = rest.split_at(m);
        rest = tail;
        let mut block = head.to_vec();
        block.sort_unstable();
        block
    };
    let s = take(params.k);
    let lambdas = (0..params.r).map(|_| take(params.s)).collect();
    let pis = pi_sizes.into_iter().map(&mut take).collect();
    let remainder = take(remainder_len);
    Partition {
        s,
        lambdas,
        pis,
        remainder,
    }
}

/// Generates an instance on a seeded random partition.
pub fn generate(params: &ModelParams) -> Result<PlantedInstance> {
    params.validate()?;
    generate_with_partition(params, random_partition(params))
}

/// Generates an instance on an explicit partition, whose block sizes must
/// match `params`.
///
/// Steps: random weight-1 edges with probability `p` between vertices of
/// different blocks, the clique on `S`, a certified expander on every Lambda
/// block, a low-density graph on every Pi block, then the adversary.
pub fn generate_with_partition(params: &ModelParams, partition: Partition) -> Result<PlantedInstance> {
    params.validate()?;
    let n = params.n;
    partition.validate(n)?;
    let sizes_ok = partition.s.len() == params.k
        && partition.lambdas.len() == params.r
        && partition.lambdas.iter().all(|b| b.len() == params.s)
        && partition.pis.iter().map(Vec::len).eq(params.pi_block_sizes());
    if !sizes_ok {
        return Err(Error::InvalidParams("partition block sizes do not match params".into()));
    }

    let labels = partition.labels(n);
    let mut graph = Graph::empty(n);
    let mut rng = rng_from_seed(derive_seed(params.seed, EDGE_STREAM));
    for i in 0..n {
        for j in (i + 1)..n {
            if labels[i] != labels[j] && rng.gen::<f64>() < params.p {
                graph.set_weight(i, j, 1.0);
            }
        }
    }
    for (a, &i) in partition.s.iter().enumerate() {
        for &j in &partition.s[a + 1..] {
            graph.set_weight(i, j, 1.0);
        }
    }
    for (l, block) in partition.lambdas.iter().enumerate() {
        let seed = derive_seed(params.seed, EXPANDER_STREAM + l as u64);
        let expander = build_expander(params.s, params.d, params.lambda, seed, params.expander_attempts)?;
        embed(&mut graph, &expander, block, params.block_weight);
    }
    for (l, block) in partition.pis.iter().enumerate() {
        let seed = derive_seed(params.seed, LOW_DENSITY_STREAM + l as u64);
        let sparse = build_low_density_block_weighted(block.len(), params.gamma, params.k, params.block_weight, seed);
        embed(&mut graph, &sparse, block, params.block_weight);
    }

    let clean = PlantedInstance {
        pre_adversary: graph.clone(),
        graph,
        partition,
        seed: params.seed,
        params: params.clone(),
    };
    Ok(apply_adversary(&clean, &params.adversary))
}

fn embed(graph: &mut Graph, block_graph: &Graph, block: &[usize], weight: f64) {
    for (a, b, _) in block_graph.edges() {
        graph.set_weight(block[a], block[b], weight);
    }
}
