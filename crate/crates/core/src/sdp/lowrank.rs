//! Low-rank augmented-Lagrangian solver.
//!
//! Each vertex vector is written `X_i = (e_0 + u_i) / 2` with `|u_i| = 1` and
//! the anchor fixed at `I = e_0`. This makes `<I, I> = 1`,
//! `<X_i, I> = |X_i|^2 = (1 + u_i0) / 2 in [0, 1]` and positive
//! semidefiniteness hold exactly, so only the trace, row-bound, non-edge and
//! pairwise box constraints go into a Powell-Hestenes-Rockafellar augmented
//! Lagrangian. Inner problems are solved by Riemannian L-BFGS on the product
//! of spheres with a row-normalising retraction.

use std::collections::VecDeque;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng as _;
use rand_distr::StandardNormal;

use super::{check_gram, objective, SdpSolution, SolverConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::rng_from_seed;

const LBFGS_MEMORY: usize = 10;
const INITIAL_PENALTY: f64 = 10.0;
const ARMIJO: f64 = 1e-4;

struct Problem<'a> {
    n: usize,
    k: f64,
    weights: &'a DMatrix<f64>,
}

impl Problem<'_> {
    fn is_edge(&self, i: usize, j: usize) -> bool {
        self.weights[(i, j)] > 0.0
    }
}

struct Multipliers {
    trace: f64,
    nonedge: DMatrix<f64>,
    row: DVector<f64>,
    nonneg: DMatrix<f64>,
    up: DMatrix<f64>,
}

struct Eval {
    value: f64,
    grad: DMatrix<f64>,
    residual: f64,
}

fn vectors(u: &DMatrix<f64>) -> DMatrix<f64> {
    let mut x = u * 0.5;
    x.column_mut(0).add_scalar_mut(0.5);
    x
}

fn normalize_rows(u: &mut DMatrix<f64>) {
    for mut row in u.row_iter_mut() {
        let norm = row.norm();
        row /= norm;
    }
}

fn project_tangent(u: &DMatrix<f64>, v: &mut DMatrix<f64>) {
    for i in 0..u.nrows() {
        let c = u.row(i).dot(&v.row(i));
        for col in 0..u.ncols() {
            v[(i, col)] -= c * u[(i, col)];
        }
    }
}

fn axpy(dst: &mut DMatrix<f64>, a: f64, x: &DMatrix<f64>) {
    dst.zip_apply(x, |d, v| *d += a * v);
}

/// Max violation of the penalised constraints at Gram matrix `g`.
fn residual(p: &Problem, g: &DMatrix<f64>) -> f64 {
    let n = p.n;
    let mut worst = (g.trace() - p.k).abs();
    for i in 0..n {
        let gii = g[(i, i)];
        worst = worst.max(g.row(i).sum() - p.k * gii);
        for j in 0..n {
            if i == j {
                continue;
            }
            let gij = g[(i, j)];
            worst = if p.is_edge(i, j) {
                worst.max(-gij).max(gij - gii)
            } else {
                worst.max(gij.abs())
            };
        }
    }
    worst
}

fn evaluate(p: &Problem, m: &Multipliers, mu: f64, u: &DMatrix<f64>) -> Eval {
    let n = p.n;
    let x = vectors(u);
    let g = &x * x.transpose();
    let h = g.trace() - p.k;
    let mut value = -0.5 * p.weights.dot(&g) + m.trace * h + 0.5 * mu * h * h;
    let mut w = p.weights * -0.5;
    let mut residual = h.abs();
    for i in 0..n {
        let gii = g[(i, i)];
        let mut diag = m.trace + mu * h;
        for j in 0..n {
            if i == j {
                continue;
            }
            let gij = g[(i, j)];
            if p.is_edge(i, j) {
                let z = m.nonneg[(i, j)];
                let ln = (z - mu * gij).max(0.0);
                value += (ln * ln - z * z) / (2.0 * mu);
                w[(i, j)] -= ln;

                let z = m.up[(i, j)];
                let lu = (z + mu * (gij - gii)).max(0.0);
                value += (lu * lu - z * z) / (2.0 * mu);
                w[(i, j)] += lu;
                diag -= lu;
                residual = residual.max(-gij).max(gij - gii);
            } else {
                let y = m.nonedge[(i, j)];
                value += y * gij + 0.5 * mu * gij * gij;
                w[(i, j)] += y + mu * gij;
                residual = residual.max(gij.abs());
            }
        }
        let excess = g.row(i).sum() - p.k * gii;
        let z = m.row[i];
        let lr = (z + mu * excess).max(0.0);
        value += (lr * lr - z * z) / (2.0 * mu);
        w.row_mut(i).add_scalar_mut(lr);
        diag -= p.k * lr;
        w[(i, i)] += diag;
        residual = residual.max(excess);
    }
    let sym = &w + w.transpose();
    let mut grad = (sym * x) * 0.5;
    project_tangent(u, &mut grad);
    Eval {
        value,
        grad,
        residual,
    }
}

fn update_multipliers(p: &Problem, m: &mut Multipliers, mu: f64, u: &DMatrix<f64>) {
    let x = vectors(u);
    let g = &x * x.transpose();
    m.trace += mu * (g.trace() - p.k);
    for i in 0..p.n {
        let gii = g[(i, i)];
        m.row[i] = (m.row[i] + mu * (g.row(i).sum() - p.k * gii)).max(0.0);
        for j in 0..p.n {
            if i == j {
                continue;
            }
            let gij = g[(i, j)];
            if p.is_edge(i, j) {
                m.nonneg[(i, j)] = (m.nonneg[(i, j)] - mu * gij).max(0.0);
                m.up[(i, j)] = (m.up[(i, j)] + mu * (gij - gii)).max(0.0);
            } else {
                m.nonedge[(i, j)] += mu * gij;
            }
        }
    }
}

/// Riemannian L-BFGS on the augmented Lagrangian for fixed multipliers.
/// Returns the number of accepted steps.
fn inner_solve(p: &Problem, m: &Multipliers, mu: f64, u: &mut DMatrix<f64>, max_steps: usize) -> usize {
    let mut cur = evaluate(p, m, mu, u);
    let mut memory: VecDeque<(DMatrix<f64>, DMatrix<f64>, f64)> = VecDeque::new();
    for step_count in 0..max_steps {
        let gnorm = cur.grad.norm();
        if step_count > 0 && gnorm < (1e-3 * cur.residual.min(1.0)).max(1e-10) {
            return step_count;
        }
        // Two-loop recursion.
        let mut q = cur.grad.clone();
        let mut alphas = Vec::with_capacity(memory.len());
        for (s, y, rho) in memory.iter().rev() {
            let a = rho * s.dot(&q);
            axpy(&mut q, -a, y);
            alphas.push(a);
        }
        match memory.back() {
            Some((s, y, _)) => q *= s.dot(y) / y.dot(y),
            None => q *= 1e-2 / gnorm.max(1e-12),
        }
        for ((s, y, rho), a) in memory.iter().zip(alphas.iter().rev()) {
            let b = rho * y.dot(&q);
            axpy(&mut q, a - b, s);
        }
        let mut dir = -q;
        project_tangent(u, &mut dir);
        let mut slope = dir.dot(&cur.grad);
        if slope >= 0.0 {
            dir = -cur.grad.clone();
            slope = -gnorm * gnorm;
            memory.clear();
        }
        let mut t = 1.0;
        let (next_u, next) = loop {
            let mut trial = &*u + &dir * t;
            normalize_rows(&mut trial);
            let e = evaluate(p, m, mu, &trial);
            if e.value <= cur.value + ARMIJO * t * slope {
                break (trial, e);
            }
            t *= 0.5;
            if t < 1e-10 {
                // No representable decrease left.
                return step_count;
            }
        };
        let stalled = cur.value - next.value <= 1e-15 * cur.value.abs().max(1.0);
        let s = &next_u - &*u;
        let y = &next.grad - &cur.grad;
        let sy = s.dot(&y);
        if sy > 1e-14 {
            memory.push_back((s, y, 1.0 / sy));
            if memory.len() > LBFGS_MEMORY {
                memory.pop_front();
            }
        }
        *u = next_u;
        cur = next;
        if stalled {
            return step_count + 1;
        }
    }
    max_steps
}

/// Spectral start: `|X_i|^2` proportional to the top eigenvector of `A`,
/// scaled so the norms sum to `k`, with seeded random orthogonal parts.
fn initial_point(graph: &Graph, k: usize, rank: usize, seed: u64) -> DMatrix<f64> {
    let n = graph.n();
    let eig = SymmetricEigen::new(graph.weights().clone());
    let top = eig.eigenvalues.imax();
    let mut v: Vec<f64> = eig.eigenvectors.column(top).iter().map(|x| x.abs()).collect();
    if v.iter().any(|x| !x.is_finite()) {
        // The QR sweep can break down on 0/1 matrices; degrees are a fine start.
        v = (0..n).map(|i| graph.degree(i)).collect();
    }
    let vmax = v.iter().cloned().fold(0.0, f64::max);
    if vmax > 0.0 {
        v.iter_mut().for_each(|x| *x /= vmax);
    } else {
        v.iter_mut().for_each(|x| *x = 1.0);
    }
    let mass = |c: f64| v.iter().map(|&x| (c * x).min(1.0)).sum::<f64>();
    let (mut lo, mut hi) = (0.0, 1e6);
    for _ in 0..100 {
        let c = 0.5 * (lo + hi);
        if mass(c) > k as f64 {
            hi = c;
        } else {
            lo = c;
        }
    }
    let mut rng = rng_from_seed(seed);
    let mut u = DMatrix::zeros(n, rank);
    for i in 0..n {
        let norm2 = (lo * v[i]).min(1.0).clamp(1e-3, 1.0 - 1e-3);
        let axial = 2.0 * norm2 - 1.0;
        let mut perp: Vec<f64> = (1..rank).map(|_| rng.sample(StandardNormal)).collect();
        let len = perp.iter().map(|x| x * x).sum::<f64>().sqrt();
        let scale = (1.0 - axial * axial).sqrt() / len.max(1e-300);
        u[(i, 0)] = axial;
        for (c, value) in perp.iter_mut().enumerate() {
            u[(i, c + 1)] = *value * scale;
        }
    }
    normalize_rows(&mut u);
    u
}

fn assemble(graph: &Graph, k: usize, u: &DMatrix<f64>, iterations: usize) -> Result<SdpSolution> {
    let n = graph.n();
    let x = vectors(u);
    let mut z = DMatrix::zeros(n + 1, u.ncols());
    z[(0, 0)] = 1.0;
    z.view_mut((1, 0), (n, u.ncols())).copy_from(&x);
    let gram = &z * z.transpose();
    let residuals = check_gram(&gram, graph, k)?;
    Ok(SdpSolution {
        k,
        objective: objective(graph, &gram),
        gram,
        residuals,
        iterations,
    })
}

/// Solves the relaxation for `graph` and `k`.
///
/// Deterministic for a fixed `(graph, k, config)`. When the residuals are
/// still above `config.tol` after `config.max_iters` outer iterations the
/// best point is returned inside [`Error::NotConverged`].
pub fn solve_sdp(graph: &Graph, k: usize, config: &SolverConfig) -> Result<SdpSolution> {
    let n = graph.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    if !(config.tol > 0.0) {
        return Err(Error::InvalidParams(format!("tol must be positive, got {}", config.tol)));
    }
    graph.validate()?;
    let rank = config.rank_for(n).max(2);
    let problem = Problem {
        n,
        k: k as f64,
        weights: graph.weights(),
    };
    let mut mult = Multipliers {
        trace: 0.0,
        nonedge: DMatrix::zeros(n, n),
        row: DVector::zeros(n),
        nonneg: DMatrix::zeros(n, n),
        up: DMatrix::zeros(n, n),
    };
    let mut u = initial_point(graph, k, rank, config.init_seed);
    let mut mu = INITIAL_PENALTY;
    let mut last = f64::INFINITY;
    let mut outer = 0;
    while outer < config.max_iters {
        outer += 1;
        inner_solve(&problem, &mult, mu, &mut u, config.inner_iters);
        let g = {
            let x = vectors(&u);
            &x * x.transpose()
        };
        let res = residual(&problem, &g);
        if res <= 0.5 * config.tol {
            break;
        }
        update_multipliers(&problem, &mut mult, mu, &u);
        if res > 0.25 * last {
            mu *= 2.0;
        }
        last = res;
    }
    let sol = assemble(graph, k, &u, outer)?;
    if sol.residuals.within(config.tol, config.tol_psd) {
        Ok(sol)
    } else {
        Err(Error::NotConverged {
            residual: sol.residuals.max(),
            iterations: outer,
            partial: Box::new(sol),
        })
    }
}
