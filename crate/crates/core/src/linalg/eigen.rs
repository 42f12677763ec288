//! Cyclic Jacobi eigensolver for dense symmetric matrices.

use serde::{Deserialize, Serialize};

use super::Matrix;
use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Eigen-decomposition `S = V diag(λ) Vᵀ` with eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct SymSpectrum {
    pub eigenvalues: Vec<f64>,
    /// Column `i` is the unit eigenvector for `eigenvalues[i]`.
    pub eigenvectors: Matrix,
    pub cluster_tolerance: f64,
    pub sweeps: usize,
}

/// A run of numerically equal eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

pub fn sym_eigen(s: &Matrix) -> Result<SymSpectrum> {
    sym_eigen_with(s, &Tolerances::default())
}

pub fn sym_eigen_with(s: &Matrix, tol: &Tolerances) -> Result<SymSpectrum> {
    if !s.is_square() {
        return Err(Error::Dimension(format!(
            "eigensolver needs a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let n = s.rows();
    let scale = s.max_abs();
    let asym = s.asymmetry();
    if asym > tol.symmetry * scale.max(1.0) {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }

    // symmetrize so that round-off in the input does not bias the rotations
    let mut a = Matrix::from_fn(n, n, |i, j| 0.5 * (s[(i, j)] + s[(j, i)]));
    let mut v = Matrix::identity(n);
    let target = tol.jacobi * a.frobenius();

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_mass(&a);
        if off <= target || off == 0.0 {
            break;
        }
        if sweeps >= tol.max_sweeps {
            return Err(Error::NoConvergence { sweeps, off });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let eigenvalues = order.iter().map(|&i| a[(i, i)]).collect();
    let eigenvectors = Matrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    Ok(SymSpectrum {
        eigenvalues,
        eigenvectors,
        cluster_tolerance: tol.cluster,
        sweeps,
    })
}

fn off_diagonal_mass(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)] * a[(i, j)];
            }
        }
    }
    sum.sqrt()
}

fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let n = a.rows();
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

impl SymSpectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Eigenvalue clusters in descending order.
    pub fn clusters(&self) -> Vec<Cluster> {
        cluster_values(&self.eigenvalues, self.cluster_tolerance)
    }

    /// Number of distinct eigenvalues after clustering.
    pub fn distinct_count(&self) -> usize {
        self.clusters().len()
    }

    /// `(positive, negative, zero)` counts with zero decided by `zero_tol * (1 + max|λ|)`.
    pub fn inertia(&self, zero_tol: f64) -> (usize, usize, usize) {
        let scale = 1.0 + self.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let cut = zero_tol * scale;
        let pos = self.eigenvalues.iter().filter(|&&v| v > cut).count();
        let neg = self.eigenvalues.iter().filter(|&&v| v < -cut).count();
        (pos, neg, self.len() - pos - neg)
    }

    pub fn reconstruct(&self) -> Matrix {
        let n = self.len();
        Matrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| self.eigenvectors[(i, k)] * self.eigenvalues[k] * self.eigenvectors[(j, k)])
                .sum()
        })
    }
}

/// Greedy clustering of a descending sequence.
pub fn cluster_values(sorted_desc: &[f64], tol: f64) -> Vec<Cluster> {
    let scale = 1.0 + sorted_desc.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut out: Vec<Cluster> = Vec::new();
    let mut sum = 0.0;
    let mut prev = f64::NAN;
    for &v in sorted_desc {
        match out.last_mut() {
            Some(cl) if (prev - v) <= tol * scale => {
                sum += v;
                cl.multiplicity += 1;
                cl.value = sum / cl.multiplicity as f64;
            }
            _ => {
                sum = v;
                out.push(Cluster {
                    value: v,
                    multiplicity: 1,
                });
            }
        }
        prev = v;
    }
    out
}

/// Number of distinct eigenvalues of `spec`.
pub fn distinct_count(spec: &SymSpectrum) -> usize {
    spec.distinct_count()
}
