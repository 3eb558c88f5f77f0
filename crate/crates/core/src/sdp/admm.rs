//! Full-matrix operator-splitting solver for small instances.
//!
//! The whole `(n+1) x (n+1)` Gram matrix `Z` is the variable, in scaled
//! vectorised form `x = svec(Z)` (off-diagonal entries times `sqrt 2`). The
//! problem is put in conic form
//!
//! ```text
//! min q'x   s.t.  A x + s = b,   s in {0}^p x R_+^m x svec(PSD)
//! ```
//!
//! where the PSD block is `-x + s = 0`, and solved by ADMM with a fixed
//! proximal term, over-relaxation and residual balancing of the step size.
//! The returned Gram matrix is the PSD slack, so it is exactly semidefinite.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::{check_gram, objective, SdpSolution};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest `n` accepted; the factorisation is dense in `(n+2)(n+1)/2`.
pub const ADMM_MAX_N: usize = 300;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmmConfig {
    /// Stop when primal and dual residuals are below this (infinity norm).
    pub eps: f64,
    pub max_iters: usize,
    pub rho: f64,
    pub sigma: f64,
    pub relaxation: f64,
    /// Feasibility tolerance the returned solution must meet.
    pub tol: f64,
    pub tol_psd: f64,
}

impl Default for AdmmConfig {
    fn default() -> Self {
        AdmmConfig {
            eps: 1e-9,
            max_iters: 200_000,
            rho: 1.0,
            sigma: 1e-6,
            relaxation: 1.6,
            tol: 1e-6,
            tol_psd: 1e-7,
        }
    }
}

struct SparseRow {
    idx: Vec<usize>,
    val: Vec<f64>,
}

impl SparseRow {
    fn dot(&self, x: &DVector<f64>) -> f64 {
        self.idx.iter().zip(&self.val).map(|(&i, &v)| v * x[i]).sum()
    }
}

/// Index of `(i, j)` with `i >= j` in the packed lower triangle, column by column.
struct Packing {
    m: usize,
}

impl Packing {
    fn len(&self) -> usize {
        self.m * (self.m + 1) / 2
    }

    fn index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i >= j { (i, j) } else { (j, i) };
        // Columns 0..j hold m + (m-1) + ... + (m-j+1) entries.
        j * self.m - j * j.saturating_sub(1) / 2 + (i - j)
    }

    fn svec(&self, z: &DMatrix<f64>) -> DVector<f64> {
        let mut x = DVector::zeros(self.len());
        for j in 0..self.m {
            for i in j..self.m {
                let scale = if i == j { 1.0 } else { std::f64::consts::SQRT_2 };
                x[self.index(i, j)] = scale * z[(i, j)];
            }
        }
        x
    }

    fn smat(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let mut z = DMatrix::zeros(self.m, self.m);
        for j in 0..self.m {
            for i in j..self.m {
                let v = x[self.index(i, j)];
                if i == j {
                    z[(i, i)] = v;
                } else {
                    let v = v / std::f64::consts::SQRT_2;
                    z[(i, j)] = v;
                    z[(j, i)] = v;
                }
            }
        }
        z
    }
}

/// A linear functional `sum c_ij Z_ij` over the symmetric `Z`, with each
/// unordered off-diagonal pair listed once.
fn functional(pack: &Packing, terms: &[(usize, usize, f64)]) -> SparseRow {
    let mut row = SparseRow {
        idx: Vec::with_capacity(terms.len()),
        val: Vec::with_capacity(terms.len()),
    };
    for &(i, j, c) in terms {
        let scale = if i == j { 1.0 } else { std::f64::consts::FRAC_1_SQRT_2 };
        let at = pack.index(i, j);
        match row.idx.iter().position(|&p| p == at) {
            Some(p) => row.val[p] += c * scale,
            None => {
                row.idx.push(at);
                row.val.push(c * scale);
            }
        }
    }
    row
}

struct Conic {
    rows: Vec<SparseRow>,
    b: DVector<f64>,
    n_eq: usize,
    q: DVector<f64>,
}

fn build(graph: &Graph, k: usize, pack: &Packing) -> Conic {
    let n = graph.n();
    let v = |i: usize| i + 1;
    let mut rows = Vec::new();
    let mut b = Vec::new();
    let mut push = |rows: &mut Vec<SparseRow>, terms: Vec<(usize, usize, f64)>, rhs: f64| {
        rows.push(functional(pack, &terms));
        b.push(rhs);
    };
    // Equalities.
    push(&mut rows, (0..n).map(|i| (v(i), v(i), 1.0)).collect(), k as f64);
    push(&mut rows, vec![(0, 0, 1.0)], 1.0);
    for i in 0..n {
        push(&mut rows, vec![(v(i), 0, 1.0), (v(i), v(i), -1.0)], 0.0);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !graph.has_edge(i, j) {
                push(&mut rows, vec![(v(i), v(j), 1.0)], 0.0);
            }
        }
    }
    let n_eq = rows.len();
    // Inequalities `a'x <= b`.
    for i in 0..n {
        let mut terms: Vec<_> = (0..n).filter(|&j| j != i).map(|j| (v(i), v(j), 1.0)).collect();
        terms.push((v(i), v(i), 1.0 - k as f64));
        push(&mut rows, terms, 0.0);
        push(&mut rows, vec![(v(i), v(i), 1.0)], 1.0);
        push(&mut rows, vec![(v(i), v(i), -1.0)], 0.0);
    }
    for (i, j, _) in graph.edges() {
        push(&mut rows, vec![(v(i), v(j), -1.0)], 0.0);
        push(&mut rows, vec![(v(i), v(j), 1.0), (v(i), v(i), -1.0)], 0.0);
        push(&mut rows, vec![(v(i), v(j), 1.0), (v(j), v(j), -1.0)], 0.0);
    }
    let mut c = DMatrix::zeros(n + 1, n + 1);
    c.view_mut((1, 1), (n, n)).copy_from(&(graph.weights() * -0.5));
    Conic {
        rows,
        b: DVector::from_vec(b),
        n_eq,
        q: pack.svec(&c),
    }
}

fn project_psd(pack: &Packing, v: &DVector<f64>) -> DVector<f64> {
    let eig = SymmetricEigen::new(pack.smat(v));
    let clamped = eig.eigenvalues.map(|l| l.max(0.0));
    let z = &eig.eigenvectors * DMatrix::from_diagonal(&clamped) * eig.eigenvectors.transpose();
    pack.svec(&z)
}

struct State<'a> {
    conic: &'a Conic,
    dim: usize,
}

impl State<'_> {
    /// `A x` for the linear rows followed by `-x` for the PSD block.
    fn apply(&self, x: &DVector<f64>) -> DVector<f64> {
        let lin = self.conic.rows.len();
        let mut out = DVector::zeros(lin + self.dim);
        for (r, row) in self.conic.rows.iter().enumerate() {
            out[r] = row.dot(x);
        }
        out.rows_mut(lin, self.dim).copy_from(&(-x));
        out
    }

    fn apply_t(&self, y: &DVector<f64>) -> DVector<f64> {
        let lin = self.conic.rows.len();
        let mut out = -y.rows(lin, self.dim).into_owned();
        for (r, row) in self.conic.rows.iter().enumerate() {
            for (&i, &v) in row.idx.iter().zip(&row.val) {
                out[i] += v * y[r];
            }
        }
        out
    }

    fn b_full(&self) -> DVector<f64> {
        let lin = self.conic.rows.len();
        let mut b = DVector::zeros(lin + self.dim);
        b.rows_mut(0, lin).copy_from(&self.conic.b);
        b
    }

    fn factor(&self, sigma: f64, rho: f64) -> Cholesky<f64, Dyn> {
        let mut m = DMatrix::from_diagonal_element(self.dim, self.dim, sigma + rho);
        for row in &self.conic.rows {
            for (&i, &vi) in row.idx.iter().zip(&row.val) {
                for (&j, &vj) in row.idx.iter().zip(&row.val) {
                    m[(i, j)] += rho * vi * vj;
                }
            }
        }
        Cholesky::new(m).expect("sigma I + rho A'A is positive definite")
    }
}

/// Solves the relaxation with ADMM on the full Gram matrix (`n <= 300`).
pub fn solve_sdp_admm(graph: &Graph, k: usize, config: &AdmmConfig) -> Result<SdpSolution> {
    let n = graph.n();
    if n > ADMM_MAX_N {
        return Err(Error::TooLarge { n, cap: ADMM_MAX_N });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidParams(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    graph.validate()?;
    let pack = Packing { m: n + 1 };
    let conic = build(graph, k, &pack);
    let st = State {
        conic: &conic,
        dim: pack.len(),
    };
    let lin = conic.rows.len();
    let total = lin + st.dim;
    let b = st.b_full();

    let mut rho = config.rho;
    let mut chol = st.factor(config.sigma, rho);
    let mut x = DVector::zeros(st.dim);
    let mut s = DVector::zeros(total);
    let mut u = DVector::zeros(total);
    let mut iterations = 0;
    let alpha = config.relaxation;
    while iterations < config.max_iters {
        iterations += 1;
        let rhs = &x * config.sigma - &conic.q - st.apply_t(&(&s - &b + &u)) * rho;
        x = chol.solve(&rhs);
        let ax = st.apply(&x);
        let ax_relaxed = &ax * alpha + (&b - &s) * (1.0 - alpha);
        let v = &b - &ax_relaxed - &u;
        let mut s_new = v.clone();
        for r in 0..conic.n_eq {
            s_new[r] = 0.0;
        }
        for r in conic.n_eq..lin {
            s_new[r] = s_new[r].max(0.0);
        }
        let psd = project_psd(&pack, &v.rows(lin, st.dim).into_owned());
        s_new.rows_mut(lin, st.dim).copy_from(&psd);
        u += &ax_relaxed + &s_new - &b;
        s = s_new;

        if iterations % 20 == 0 {
            let y = &u * rho;
            let primal = (&ax + &s - &b).amax();
            let dual = (&conic.q + st.apply_t(&y)).amax();
            let gap = (conic.q.dot(&x) + b.dot(&y)).abs();
            let scale = 1.0 + conic.q.dot(&x).abs();
            if primal <= config.eps && dual <= config.eps && gap <= config.eps * scale {
                break;
            }
            if iterations % 100 == 0 && primal > 0.0 && dual > 0.0 {
                let ratio = (primal / dual).sqrt();
                if !(0.2..=5.0).contains(&ratio) {
                    let new_rho = (rho * ratio).clamp(1e-6, 1e6);
                    u *= rho / new_rho;
                    rho = new_rho;
                    chol = st.factor(config.sigma, rho);
                }
            }
        }
    }
    let gram = pack.smat(&s.rows(lin, st.dim).into_owned());
    let residuals = check_gram(&gram, graph, k)?;
    let sol = SdpSolution {
        k,
        objective: objective(graph, &gram),
        gram,
        residuals,
        iterations,
    };
    if sol.residuals.within(config.tol, config.tol_psd) {
        Ok(sol)
    } else {
        Err(Error::NotConverged {
            residual: sol.residuals.max(),
            iterations,
            partial: Box::new(sol),
        })
    }
}
