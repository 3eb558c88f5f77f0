use thiserror::Error;

use crate::sdp::SdpSolution;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),

    #[error("no certified sample after {attempts} attempts")]
    AttemptsExhausted { attempts: usize },

    /// The partial solution is kept so callers can inspect how far the solver got.
    #[error("solver did not converge: max residual {residual:.3e} after {iterations} iterations")]
    NotConverged {
        residual: f64,
        iterations: usize,
        partial: Box<SdpSolution>,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("recovery denominator 1 - 6p - 2gamma - d/s - lambda/k = {0} is not positive")]
    InvalidDenominator(f64),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("vertex set is not a clique")]
    NotAClique,

    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("np = {np} is below kappa * ln n = {bound}")]
    RegimeViolation { np: f64, bound: f64 },

    #[error("block carries no SDP mass")]
    ZeroMass,

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
