//! Spectrum of `Δ = I − K̄` in the `π`-weighted inner product.
//!
//! `Δ` is self-adjoint for `⟨·,·⟩_π`, so `Π^{1/2} Δ Π^{−1/2}` is an ordinary
//! symmetric matrix. Its entries are `δ_uv − φ̄(u,v)/√(π(u)π(v))`. Cyclic
//! Jacobi rotations diagonalise it, and eigenvectors map back through `Π^{−1/2}`.

use rand::Rng;
use serde::Serialize;

use crate::calculus::{inner_pi, laplacian_apply, LaplacianKind};
use crate::error::{Error, Result};
use crate::graph_model::{MarkovChain, Matrix};
use crate::scalar::{Scalar, FLOAT_ZERO};

/// Off-diagonal Frobenius norm at which Jacobi stops.
pub const JACOBI_TOLERANCE: f64 = 1e-12;

/// Eigenvalues closer than this are treated as one cluster.
pub const CLUSTER_GAP: f64 = 1e-9;

const MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumReport {
    /// `λ₁ ≤ … ≤ λ_n`.
    pub lambdas: Vec<f64>,
    /// `α_k = 1 − λ_k`, hence descending.
    pub alphas: Vec<f64>,
    /// `λ̄_k`, the mean of the first `k` eigenvalues.
    pub mean_lambdas: Vec<f64>,
    /// `π`-orthonormal eigenfunctions, first nonzero coordinate positive.
    pub eigenbasis: Vec<Vec<f64>>,
    /// Whether `λ_k` shares its eigenspace with a neighbouring index.
    pub degenerate: Vec<bool>,
    pub sweeps: usize,
}

impl SpectrumReport {
    /// `λ_k`, 1-based.
    pub fn lambda(&self, k: usize) -> f64 {
        self.lambdas[k - 1]
    }

    /// `α_k`, 1-based.
    pub fn alpha(&self, k: usize) -> f64 {
        self.alphas[k - 1]
    }

    /// `λ̄_k`, 1-based.
    pub fn mean_lambda(&self, k: usize) -> f64 {
        self.mean_lambdas[k - 1]
    }

    /// The eigenfunction `f_k`, 1-based.
    pub fn eigenfunction(&self, k: usize) -> &[f64] {
        &self.eigenbasis[k - 1]
    }
}

pub fn spectrum<S: Scalar>(chain: &MarkovChain<S>) -> Result<SpectrumReport> {
    let c = chain.to_f64();
    let n = c.vertex_count();
    let root: Vec<f64> = c.pi().iter().map(|p| p.sqrt()).collect();
    let sym = Matrix::from_fn(n, |u, v| {
        let id = if u == v { 1.0 } else { 0.0 };
        id - c.phi_bar(u, v) / (root[u] * root[v])
    });
    let (values, vectors, sweeps) = jacobi(&sym)?;

    let mut pairs: Vec<(f64, Vec<f64>)> = values
        .into_iter()
        .zip(vectors)
        .map(|(lambda, x)| {
            let f: Vec<f64> = x.iter().zip(&root).map(|(xi, r)| xi / r).collect();
            (lambda, sign_normalized(f))
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let degenerate = order_clusters(&mut pairs);

    let lambdas: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let alphas = lambdas.iter().map(|l| 1.0 - l).collect();
    let mean_lambdas = lambdas
        .iter()
        .scan(0.0, |acc, l| {
            *acc += l;
            Some(*acc)
        })
        .enumerate()
        .map(|(i, s)| s / (i + 1) as f64)
        .collect();
    let eigenbasis = pairs.into_iter().map(|p| p.1).collect();
    Ok(SpectrumReport { lambdas, alphas, mean_lambdas, eigenbasis, degenerate, sweeps })
}

/// Within each cluster of near-equal eigenvalues, sorts eigenvectors
/// lexicographically. Returns the per-index degeneracy flags.
fn order_clusters(pairs: &mut [(f64, Vec<f64>)]) -> Vec<bool> {
    let n = pairs.len();
    let mut degenerate = vec![false; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && pairs[end].0 - pairs[end - 1].0 < CLUSTER_GAP {
            end += 1;
        }
        if end - start > 1 {
            pairs[start..end].sort_by(|a, b| lex_cmp(&a.1, &b.1));
            degenerate[start..end].iter_mut().for_each(|d| *d = true);
        }
        start = end;
    }
    degenerate
}

fn lex_cmp(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > FLOAT_ZERO {
            return x.total_cmp(y);
        }
    }
    std::cmp::Ordering::Equal
}

fn sign_normalized(mut f: Vec<f64>) -> Vec<f64> {
    if let Some(first) = f.iter().find(|x| x.abs() > FLOAT_ZERO) {
        if *first < 0.0 {
            f.iter_mut().for_each(|x| *x = -*x);
        }
    }
    f
}

/// Cyclic Jacobi on a symmetric matrix. Returns eigenvalues, unit eigenvectors
/// (as rows) and the number of sweeps.
pub fn jacobi(m: &Matrix<f64>) -> Result<(Vec<f64>, Vec<Vec<f64>>, usize)> {
    let n = m.order();
    let mut a = m.to_rows();
    let mut v: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect()).collect();
    let off = |a: &Vec<Vec<f64>>| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) >= JACOBI_TOLERANCE {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NonConvergence { residual: off(&a) });
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vp = row[p];
                    let vq = row[q];
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
        sweeps += 1;
    }
    let values = (0..n).map(|i| a[i][i]).collect();
    let vectors = (0..n).map(|j| (0..n).map(|i| v[i][j]).collect()).collect();
    Ok((values, vectors, sweeps))
}

/// Ascending eigenvalues of a symmetric matrix.
pub fn symmetric_eigenvalues(m: &Matrix<f64>) -> Result<Vec<f64>> {
    let (mut values, _, _) = jacobi(m)?;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Checks `⟨f_i, f_j⟩_π = δ_ij` within `1e-10`.
pub fn check_orthonormal(chain: &MarkovChain<f64>, frame: &[Vec<f64>]) -> Result<()> {
    for (i, fi) in frame.iter().enumerate() {
        if fi.len() != chain.vertex_count() {
            return Err(Error::Dimension { expected: chain.vertex_count(), got: fi.len() });
        }
        for (j, fj) in frame.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            let got = inner_pi(chain, fi, fj);
            if (got - target).abs() > 1e-10 {
                return Err(Error::NotOrthonormal(format!("<f{}, f{}> = {got:e}", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// `(1/n) Σ ⟨Δf_i, f_i⟩_π` over a `π`-orthonormal frame. Bounded below by `λ̄_n`.
pub fn ky_fan_value(chain: &MarkovChain<f64>, frame: &[Vec<f64>]) -> Result<f64> {
    if frame.is_empty() || frame.len() > chain.vertex_count() {
        return Err(Error::OutOfRange { n: frame.len(), max: chain.vertex_count() });
    }
    check_orthonormal(chain, frame)?;
    let total: f64 = frame
        .iter()
        .map(|f| inner_pi(chain, &laplacian_apply(chain, f, LaplacianKind::Symmetric), f))
        .sum();
    Ok(total / frame.len() as f64)
}

/// Gram–Schmidt in `⟨·,·⟩_π` applied to random Gaussian-ish vectors.
pub fn random_orthonormal_frame<R: Rng>(chain: &MarkovChain<f64>, n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let dim = chain.vertex_count();
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(n);
    while frame.len() < n {
        let mut f: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        for _ in 0..2 {
            for g in &frame {
                let c = inner_pi(chain, &f, g);
                f.iter_mut().zip(g).for_each(|(x, y)| *x -= c * y);
            }
        }
        let norm = inner_pi(chain, &f, &f).sqrt();
        if norm > 1e-6 {
            frame.push(f.into_iter().map(|x| x / norm).collect());
        }
    }
    frame
}
