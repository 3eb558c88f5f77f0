//! Planted cliques in semi-random graphs, recovered by rounding a k-clique SDP.
//!
//! The crate is organised the way an experiment flows:
//!
//! - [`model`] generates instances: a clique on `S`, random edges of density
//!   `p` across blocks, certified expander blocks, low-density blocks, and a
//!   monotone adversary that only deletes edges.
//! - [`sdp`] solves the k-clique relaxation with the non-edge orthogonality
//!   constraints and certifies any candidate Gram matrix.
//! - [`recovery`] computes the recovery parameters, thresholds vector norms
//!   and greedily completes the resulting clique.
//! - [`oracles`] holds exact and statistical reference computations used to
//!   check every analytic bound at desk scale.
//! - [`harness`] runs seeded trials and parameter sweeps and writes CSV.
//!
//! ```
//! use clique_sdp::model::{generate, ModelParams};
//! use clique_sdp::recovery::{compute_params, recover};
//! use clique_sdp::sdp::{solve_sdp, SolverConfig};
//!
//! let params = ModelParams::planted(50, 20, 0.05).with_seed(3);
//! let instance = generate(&params).unwrap();
//! let solution = solve_sdp(&instance.graph, params.k, &SolverConfig::default()).unwrap();
//! let rp = compute_params(&params, 1.0).unwrap();
//! let result = recover(&instance, &solution, &rp);
//! assert!(result.success == Some(true));
//! ```

pub mod error;
pub mod graph;
pub mod harness;
pub mod model;
pub mod oracles;
pub mod recovery;
pub mod rng;
pub mod sdp;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};

/// Compiles and runs the code listings of the guide under `book/`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/model.md")]
    mod model {}
    #[doc = include_str!("../../../book/src/sdp.md")]
    mod sdp {}
    #[doc = include_str!("../../../book/src/recovery.md")]
    mod recovery {}
    #[doc = include_str!("../../../book/src/oracles.md")]
    mod oracles {}
    #[doc = include_str!("../../../book/src/experiments.md")]
    mod experiments {}
}
