//! Instance generation for the semi-random planted clique model.
//!
//! An instance on `n` vertices is built from a partition into the planted set
//! `S` (`|S| = k`), `r` expander blocks `Lambda_l` of size `s` and `t`
//! low-density blocks `Pi_l`:
//!
//! 1. every pair in different blocks gets a weight-1 edge with probability `p`;
//! 2. each vertex gets a unit self-loop and `S` becomes a clique;
//! 3. each `Lambda_l` receives a certified `(s, d, lambda)`-expander;
//! 4. each `Pi_l` receives a graph whose every subgraph has density at most
//!    `gamma * k`;
//! 5. a monotone adversary may delete any edge not inside `S`.
//!
//! Density of a vertex set is the unordered edge weight inside it divided by
//! its size, which is the same as the ordered adjacency sum over `2|V'|`.

mod adversary;
mod expander;
mod generate;
mod instance;
mod low_density;
mod params;

pub use adversary::{apply_adversary, eligible_edges};
pub use expander::{build_expander, certify_expander, expander_spectrum, ExpanderCertificate};
pub use generate::{generate, generate_with_partition, random_partition};
pub use instance::{Partition, PlantedInstance};
pub use low_density::{build_low_density_block, build_low_density_block_weighted, degree_cap};
pub use params::{AdversaryKind, AdversaryPolicy, ModelParams};
