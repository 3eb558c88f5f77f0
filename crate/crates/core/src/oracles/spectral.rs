//! Spectral norms and eigenvalues of symmetric matrices.
//!
//! [`spectral_norm`] runs a Krylov-accelerated power iteration (Lanczos with
//! full reorthogonalisation) from a fixed pseudo-random start.
//! [`symmetric_eigenvalues`] is the dense reference: Householder
//! tridiagonalisation followed by Sturm-sequence bisection, which stays finite
//! on matrices with many exact zeros where nalgebra's implicit QR sweep can
//! return NaN.

use nalgebra::linalg::SymmetricTridiagonal;
use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::rng::rng_from_seed;

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    let n = m.nrows();
    if m.ncols() != n {
        return Err(Error::NotSymmetric);
    }
    let scale = m.amax().max(1.0);
    for j in 0..n {
        for i in (j + 1)..n {
            if (m[(i, j)] - m[(j, i)]).abs() > 1e-12 * scale {
                return Err(Error::NotSymmetric);
            }
        }
    }
    Ok(())
}

/// `max |eigenvalue|` from the dense eigenvalue computation.
pub fn spectral_norm_dense(m: &DMatrix<f64>) -> Result<f64> {
    check_symmetric(m)?;
    let values = symmetric_eigenvalues(m);
    Ok(values.first().map_or(0.0, |&hi| hi.abs().max(values[values.len() - 1].abs())))
}

/// Eigenvalues of a symmetric matrix in descending order.
pub fn eigenvalues_desc(m: &DMatrix<f64>) -> Vec<f64> {
    symmetric_eigenvalues(m)
}

/// Eigenvalues of the symmetric part of `m`, descending, each to within a few
/// ulps of `||m||`.
pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    if n == 0 {
        return Vec::new();
    }
    let (d, e) = tridiagonal(m);
    (0..n).rev().map(|k| kth_smallest(&d, &e, k)).collect()
}

/// Smallest eigenvalue of the symmetric part of `m`; 0 for an empty matrix.
pub fn min_eigenvalue(m: &DMatrix<f64>) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let (d, e) = tridiagonal(m);
    kth_smallest(&d, &e, 0)
}

fn tridiagonal(m: &DMatrix<f64>) -> (Vec<f64>, Vec<f64>) {
    let sym = (m + m.transpose()) * 0.5;
    if sym.nrows() == 1 {
        return (vec![sym[(0, 0)]], Vec::new());
    }
    let (d, e) = SymmetricTridiagonal::new(sym).unpack_tridiagonal();
    (d.iter().copied().collect(), e.iter().copied().collect())
}

/// Number of eigenvalues of the tridiagonal `(d, e)` below `x`.
fn count_below(d: &[f64], e: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for i in 0..d.len() {
        let off = if i == 0 { 0.0 } else { e[i - 1] * e[i - 1] / q };
        q = d[i] - x - off;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k`-th smallest eigenvalue (0-based) by bisection on Sturm counts.
fn kth_smallest(d: &[f64], e: &[f64], k: usize) -> f64 {
    let n = d.len();
    let radius = |i: usize| {
        let left = if i > 0 { e[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { e[i].abs() } else { 0.0 };
        left + right
    };
    let mut lo = (0..n).map(|i| d[i] - radius(i)).fold(f64::INFINITY, f64::min);
    let mut hi = (0..n).map(|i| d[i] + radius(i)).fold(f64::NEG_INFINITY, f64::max);
    let scale = lo.abs().max(hi.abs());
    if scale == 0.0 {
        return 0.0;
    }
    let pivmin = f64::MIN_POSITIVE.max(f64::EPSILON * f64::EPSILON * scale * scale);
    lo -= f64::EPSILON * scale;
    hi += f64::EPSILON * scale;
    while hi - lo > 2.0 * f64::EPSILON * scale {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if count_below(d, e, mid, pivmin) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `||M||` within relative tolerance `tol`.
pub fn spectral_norm(m: &DMatrix<f64>, tol: f64) -> Result<f64> {
    check_symmetric(m)?;
    let n = m.nrows();
    if n == 0 || m.amax() == 0.0 {
        return Ok(0.0);
    }
    if n <= 8 {
        return spectral_norm_dense(m);
    }
    let mut rng = rng_from_seed(0x5eed_5eed);
    let mut basis: Vec<DVector<f64>> = Vec::with_capacity(n.min(256));
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut q = random_unit(n, &mut rng);
    loop {
        let mut w = m * &q;
        let alpha = q.dot(&w);
        w.axpy(-alpha, &q, 1.0);
        if let Some(prev) = basis.last() {
            w.axpy(-betas.last().copied().unwrap_or(0.0), prev, 1.0);
        }
        basis.push(q.clone());
        // Two passes of Gram-Schmidt keep the basis orthogonal to machine precision.
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
        }
        alphas.push(alpha);
        let beta = w.norm();
        let steps = alphas.len();
        let exhausted = steps == n;
        let invariant = beta <= 1e-12 * m.amax() * (n as f64).sqrt();

        if exhausted || invariant || steps % 4 == 0 {
            // An invariant Krylov space from a random start holds a component of
            // every eigenspace, so its Ritz values include both extremes.
            let (estimate, converged) = ritz_check(&alphas, &betas, beta, tol);
            if exhausted || invariant || converged {
                return Ok(estimate);
            }
        }
        betas.push(beta);
        q = w / beta;
    }
}

fn random_unit(n: usize, rng: &mut impl rand::Rng) -> DVector<f64> {
    let v = DVector::from_fn(n, |_, _| rng.gen::<f64>() - 0.5);
    let norm = v.norm();
    v / norm
}

/// Largest |Ritz value| of the tridiagonal matrix and whether both extreme
/// Ritz pairs have residual `|beta * s_last| <= tol * estimate`.
fn ritz_check(alphas: &[f64], betas: &[f64], beta: f64, tol: f64) -> (f64, bool) {
    let m = alphas.len();
    let mut t = DMatrix::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alphas[i];
        if i + 1 < m {
            t[(i, i + 1)] = betas[i];
            t[(i + 1, i)] = betas[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let (mut lo, mut hi) = (0, 0);
    for i in 0..m {
        if eig.eigenvalues[i] < eig.eigenvalues[lo] {
            lo = i;
        }
        if eig.eigenvalues[i] > eig.eigenvalues[hi] {
            hi = i;
        }
    }
    let estimate = eig.eigenvalues[lo].abs().max(eig.eigenvalues[hi].abs());
    let residual = |i: usize| (beta * eig.eigenvectors[(m - 1, i)]).abs();
    let converged = residual(lo) <= tol * estimate && residual(hi) <= tol * estimate;
    (estimate, converged)
}
