//! Reference computations that the main pipeline is checked against.
//!
//! Everything here is either exact (maximum clique, densest subgraph, dense
//! eigendecompositions) or a seeded Monte Carlo estimate (`xi`).

mod flow;

pub mod centered;
pub mod densest;
pub mod expander_check;
pub mod lp_certificate;
pub mod max_clique;
pub mod spectral;
pub mod xi;

pub use centered::{build_centered_matrix, CenteredMatrix};
pub use densest::{densest_subgraph_exact, density_upper_bound_holds, subset_density, DensityCertificate};
pub use expander_check::expander_sdp_bound_check;
pub use lp_certificate::{sdp_to_lp_certificate, LpCertificate};
pub use max_clique::brute_force_max_clique;
pub use spectral::{spectral_norm, spectral_norm_dense};
pub use xi::{estimate_xi, estimate_xi_with_kappa, xi_ratios, DEFAULT_KAPPA};
