//! Empirical estimate of the constant in `||B|| <= xi * sqrt(np)`.

use nalgebra::DMatrix;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::oracles::spectral::spectral_norm;
use crate::rng::{derive_seed, rng_from_seed};

/// `kappa` in the regime condition `np >= kappa * ln n`.
pub const DEFAULT_KAPPA: f64 = 1.0;

const MIN_TRIALS: usize = 30;

/// Symmetric matrix with zero diagonal and independent off-diagonal entries
/// `Bernoulli(p) - p`.
pub fn random_centered(n: usize, p: f64, seed: u64) -> DMatrix<f64> {
    let mut rng = rng_from_seed(seed);
    let mut b = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in (i + 1)..n {
            let x = if rng.gen::<f64>() < p { 1.0 - p } else { -p };
            b[(i, j)] = x;
            b[(j, i)] = x;
        }
    }
    b
}

/// `||B|| / sqrt(np)` for `trials` independent random centered matrices.
/// Trial `i` uses the seed `derive_seed(seed, i)`.
pub fn xi_ratios(n: usize, p: f64, trials: usize, seed: u64) -> Result<Vec<f64>> {
    if !(p > 0.0 && p < 1.0) || n == 0 {
        return Err(Error::InvalidParams(format!("need n >= 1 and p in (0, 1), got n = {n}, p = {p}")));
    }
    let scale = (n as f64 * p).sqrt();
    (0..trials)
        .map(|i| {
            let b = random_centered(n, p, derive_seed(seed, i as u64));
            Ok(spectral_norm(&b, 1e-8)? / scale)
        })
        .collect()
}

/// Max of [`xi_ratios`] over `trials >= 30` trials, with `kappa = DEFAULT_KAPPA`.
pub fn estimate_xi(n: usize, p: f64, trials: usize, seed: u64) -> Result<f64> {
    estimate_xi_with_kappa(n, p, trials, seed, DEFAULT_KAPPA)
}

pub fn estimate_xi_with_kappa(n: usize, p: f64, trials: usize, seed: u64, kappa: f64) -> Result<f64> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidParams(format!("need at least {MIN_TRIALS} trials, got {trials}")));
    }
    let np = n as f64 * p;
    let bound = kappa * (n as f64).ln();
    if np < bound {
        return Err(Error::RegimeViolation { np, bound });
    }
    Ok(xi_ratios(n, p, trials, seed)?.into_iter().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guards() {
        assert!(matches!(estimate_xi(100, 0.5, 10, 0), Err(Error::InvalidParams(_))));
        assert!(matches!(estimate_xi(500, 0.01, 30, 0), Err(Error::RegimeViolation { .. })));
    }

    #[test]
    fn nearly_complete_has_tiny_ratio() {
        assert!(estimate_xi(120, 1.0 - 1e-12, 30, 1).unwrap() < 1e-6);
    }

    #[test]
    fn deterministic() {
        assert_eq!(estimate_xi(60, 0.3, 30, 5).unwrap(), estimate_xi(60, 0.3, 30, 5).unwrap());
    }
}
