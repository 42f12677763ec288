use super::svd::rank_and_nullspace;
use super::{sym_eigen, Matrix};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Orthonormalize the columns of a full column rank matrix (modified
/// Gram–Schmidt with one re-orthogonalization pass).
pub fn gram_schmidt_columns(m: &Matrix) -> Result<Matrix> {
    let cols = m.cols();
    let rank = rank_and_nullspace(m).rank;
    if rank < cols {
        return Err(Error::RankDeficient { rank, cols });
    }
    let mut q: Vec<Vec<f64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut v = m.column(j);
        for _pass in 0..2 {
            for prev in &q {
                let d: f64 = prev.iter().zip(&v).map(|(a, b)| a * b).sum();
                for (x, p) in v.iter_mut().zip(prev) {
                    *x -= d * p;
                }
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        q.push(v);
    }
    Ok(Matrix::from_fn(m.rows(), cols, |i, j| q[j][i]))
}

/// Symmetric square root `B` with `BᵀB = S` for a PSD matrix `S`.
pub fn psd_sqrt_factor(s: &Matrix) -> Result<Matrix> {
    let spec = sym_eigen(s)?;
    let k = s.rows();
    let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -1e-10 * s.max_abs().max(f64::MIN_POSITIVE) {
        return Err(Error::Indefinite {
            min_eigenvalue: min,
        });
    }
    let roots: Vec<f64> = spec.eigenvalues.iter().map(|&l| l.max(0.0).sqrt()).collect();
    let v = &spec.eigenvectors;
    Ok(Matrix::from_fn(k, k, |i, j| {
        (0..k).map(|c| v[(i, c)] * roots[c] * v[(j, c)]).sum()
    }))
}

/// Default zero threshold `1e-6 * (1 + ||M||_max)`.
pub fn default_zero_tol(m: &Matrix) -> f64 {
    1e-6 * (1.0 + m.max_abs())
}

/// Off-diagonal nonzero pattern of a symmetric matrix, as a graph.
pub fn pattern_of(m: &Matrix, zero_tol: Option<f64>) -> Graph {
    let tol = zero_tol.unwrap_or_else(|| default_zero_tol(m));
    let n = m.rows();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if m[(i, j)].abs() > tol || m[(j, i)].abs() > tol {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("pattern edges are simple by construction")
}
