//! Random regular graphs certified as `(s, d, lambda)`-expanders.
//!
//! Samples come from the pairing model with Steger-Wormald style incremental
//! pairing: stubs are matched one random suitable pair at a time, and the
//! whole attempt restarts when no suitable pair is left. Each sample is then
//! checked by a full eigendecomposition.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracles::spectral::eigenvalues_desc;
use crate::rng::{derive_seed, rng_from_seed, Rng};

/// Spectrum of a regular block: every nontrivial eigenvalue is at most `second` in modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpanderCertificate {
    /// Adjacency eigenvalues, descending, self-loops excluded.
    pub eigenvalues: Vec<f64>,
    /// `max_{i >= 2} |lambda_i|`.
    pub second: f64,
}

const SPECTRAL_TOL: f64 = 1e-9;

/// Eigenvalues of the loop-free adjacency and the largest nontrivial one in
/// magnitude. Returns `None` unless the graph is `d`-regular with unit weights.
pub fn expander_spectrum(graph: &Graph, d: usize) -> Option<ExpanderCertificate> {
    let a = graph.loopless_adjacency();
    let regular = (0..graph.n()).all(|i| {
        a.row(i).iter().all(|&w| w == 0.0 || w == 1.0) && a.row(i).sum() == d as f64
    });
    if !regular {
        return None;
    }
    let eigenvalues = eigenvalues_desc(&a);
    let second = eigenvalues.iter().skip(1).fold(0.0f64, |m, v| m.max(v.abs()));
    Some(ExpanderCertificate { eigenvalues, second })
}

/// True iff `graph` is a `d`-regular unweighted graph with top eigenvalue `d`
/// and every other eigenvalue at most `lambda` in magnitude.
pub fn certify_expander(graph: &Graph, d: usize, lambda: f64) -> bool {
    match expander_spectrum(graph, d) {
        Some(cert) => {
            let top_ok = cert.eigenvalues.first().map_or(true, |&l| (l - d as f64).abs() <= SPECTRAL_TOL);
            top_ok && cert.second <= lambda + SPECTRAL_TOL
        }
        None => false,
    }
}

/// Samples `d`-regular graphs on `s` vertices until one is certified.
///
/// Fails fast with `InfeasibleParams` when no regular graph exists or when
/// `lambda` is below the trace bound `sqrt(d (s - d) / (s - 1))` that every
/// `d`-regular graph on `s` vertices must meet.
pub fn build_expander(s: usize, d: usize, lambda: f64, seed: u64, max_attempts: usize) -> Result<Graph> {
    if s == 0 {
        return Ok(Graph::empty(0));
    }
    if d >= s || (d * s) % 2 == 1 || !(lambda >= 0.0) {
        return Err(Error::InfeasibleParams(format!(
            "no ({s}, {d}, {lambda})-expander: need d < s, d*s even, lambda >= 0"
        )));
    }
    if s > 1 {
        let floor = (d as f64 * (s - d) as f64 / (s - 1) as f64).sqrt();
        if lambda + SPECTRAL_TOL < floor {
            return Err(Error::InfeasibleParams(format!(
                "lambda = {lambda} is below the trace bound {floor:.6} for d = {d}, s = {s}"
            )));
        }
    }
    if d == s - 1 {
        let g = Graph::complete(s);
        return if certify_expander(&g, d, lambda) {
            Ok(g)
        } else {
            Err(Error::AttemptsExhausted { attempts: 1 })
        };
    }
    for attempt in 0..max_attempts {
        let mut rng = rng_from_seed(derive_seed(seed, attempt as u64));
        if let Some(g) = sample_regular(s, d, &mut rng) {
            if certify_expander(&g, d, lambda) {
                return Ok(g);
            }
        }
    }
    Err(Error::AttemptsExhausted {
        attempts: max_attempts,
    })
}

/// One pass of incremental stub pairing; `None` if it gets stuck.
fn sample_regular(s: usize, d: usize, rng: &mut Rng) -> Option<Graph> {
    let mut stubs: Vec<usize> = (0..s).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    stubs.shuffle(rng);
    let mut adj = DMatrix::<f64>::identity(s, s);
    while !stubs.is_empty() {
        let mut found = None;
        for _ in 0..64 {
            let a = rng.gen_range(0..stubs.len());
            let b = rng.gen_range(0..stubs.len());
            let (u, v) = (stubs[a], stubs[b]);
            if a != b && u != v && adj[(u, v)] == 0.0 {
                found = Some((a, b));
                break;
            }
        }
        if found.is_none() {
            // Random probing failed; scan for any suitable pair before giving up.
            let suitable: Vec<(usize, usize)> = (0..stubs.len())
                .flat_map(|a| ((a + 1)..stubs.len()).map(move |b| (a, b)))
                .filter(|&(a, b)| stubs[a] != stubs[b] && adj[(stubs[a], stubs[b])] == 0.0)
                .collect();
            found = Some(*suitable.get(rng.gen_range(0..suitable.len().max(1)))?);
        }
        let (a, b) = found?;
        let (u, v) = (stubs[a], stubs[b]);
        adj[(u, v)] = 1.0;
        adj[(v, u)] = 1.0;
        let (hi, lo) = if a > b { (a, b) } else { (b, a) };
        stubs.swap_remove(hi);
        stubs.swap_remove(lo);
    }
    Graph::from_weights(adj).ok()
}
