//! One-sided Jacobi SVD, used for rank, null spaces and singular-value energies.

use super::Matrix;

/// Result of [`rank_and_nullspace`].
#[derive(Debug, Clone)]
pub struct RankInfo {
    pub rank: usize,
    /// All singular values, descending (length = number of columns).
    pub singular_values: Vec<f64>,
    /// Orthonormal kernel basis, one column per null direction.
    pub null_basis: Matrix,
    pub tolerance: f64,
}

struct Svd {
    sigma: Vec<f64>,
    v: Matrix,
}

fn one_sided_jacobi(m: &Matrix) -> Svd {
    let rows = m.rows();
    let cols = m.cols();
    // work column-major: u[j] is column j
    let mut u: Vec<Vec<f64>> = (0..cols).map(|j| m.column(j)).collect();
    let mut v = Matrix::identity(cols);
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();

    for _sweep in 0..80 {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let alpha = dot(&u[i], &u[i]);
                let beta = dot(&u[j], &u[j]);
                let gamma = dot(&u[i], &u[j]);
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..rows {
                    let a = u[i][k];
                    let b = u[j][k];
                    u[i][k] = c * a - s * b;
                    u[j][k] = s * a + c * b;
                }
                for k in 0..cols {
                    let a = v[(k, i)];
                    let b = v[(k, j)];
                    v[(k, i)] = c * a - s * b;
                    v[(k, j)] = s * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let norms: Vec<f64> = u.iter().map(|c| dot(c, c).sqrt()).collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    Svd {
        sigma: order.iter().map(|&k| norms[k]).collect(),
        v: Matrix::from_fn(cols, cols, |r, c| v[(r, order[c])]),
    }
}

/// Singular values of `m`, descending.
pub fn singular_values(m: &Matrix) -> Vec<f64> {
    if m.cols() > m.rows() {
        return singular_values(&m.transpose());
    }
    one_sided_jacobi(m).sigma
}

/// Default rank cutoff `max(rows, cols) * eps * sigma_max`.
pub fn default_rank_tolerance(rows: usize, cols: usize, sigma_max: f64) -> f64 {
    rows.max(cols) as f64 * f64::EPSILON * sigma_max
}

pub fn rank_and_nullspace(m: &Matrix) -> RankInfo {
    rank_and_nullspace_with(m, None)
}

/// Rank and orthonormal kernel basis. `tol` overrides the default cutoff.
pub fn rank_and_nullspace_with(m: &Matrix, tol: Option<f64>) -> RankInfo {
    let cols = m.cols();
    if cols == 0 || m.rows() == 0 {
        return RankInfo {
            rank: 0,
            singular_values: vec![0.0; cols],
            null_basis: Matrix::identity(cols),
            tolerance: 0.0,
        };
    }
    let svd = one_sided_jacobi(m);
    let sigma_max = svd.sigma[0];
    let tolerance = tol.unwrap_or_else(|| default_rank_tolerance(m.rows(), cols, sigma_max));
    let rank = svd.sigma.iter().filter(|&&s| s > tolerance).count();
    let null_basis = Matrix::from_fn(cols, cols - rank, |r, c| svd.v[(r, rank + c)]);
    RankInfo {
        rank,
        singular_values: svd.sigma,
        null_basis,
        tolerance,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn zero_matrix_has_rank_zero() {
        let info = rank_and_nullspace(&Matrix::zeros(3, 4));
        assert_eq!(info.rank, 0);
        assert_eq!(info.null_basis.cols(), 4);
    }

    #[test]
    fn all_ones_column_has_rank_one() {
        let info = rank_and_nullspace(&Matrix::ones(6, 1));
        assert_eq!(info.rank, 1);
        assert!((info.singular_values[0] - 6f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn null_basis_is_kernel() {
        // rank 2, 3 columns: col3 = col1 + col2
        let m = Matrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![0.0, 1.0, 1.0],
            vec![4.0, -1.0, 3.0],
            vec![2.0, 2.0, 4.0],
        ])
        .unwrap();
        let info = rank_and_nullspace(&m);
        assert_eq!(info.rank, 2);
        assert_eq!(info.null_basis.cols(), 1);
        let x = info.null_basis.column(0);
        let r = m.mul_vec(&x);
        assert!(r.iter().all(|v| v.abs() <= 10.0 * info.tolerance.max(1e-15)));
        let norm: f64 = x.iter().map(|v| v * v).sum::<f64>();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn wide_matrix_singular_values() {
        let m = Matrix::from_rows(&[vec![3.0, 0.0, 0.0], vec![0.0, 0.0, -2.0]]).unwrap();
        let sv = singular_values(&m);
        assert_eq!(sv.len(), 2);
        assert!((sv[0] - 3.0).abs() < 1e-15 && (sv[1] - 2.0).abs() < 1e-15);
        let info = rank_and_nullspace(&m);
        assert_eq!(info.rank, 2);
        assert_eq!(info.null_basis.cols(), 1);
    }

    fn random_low_rank(seed: u64) -> Matrix {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let rows = rng.random_range(1..8);
        let cols = rng.random_range(1..8);
        let r = rng.random_range(0..=rows.min(cols));
        let a = Matrix::from_fn(rows, r, |_, _| rng.random_range(-2i32..=2) as f64);
        let b = Matrix::from_fn(r, cols, |_, _| rng.random_range(-2i32..=2) as f64);
        if r == 0 {
            Matrix::zeros(rows, cols)
        } else {
            a.mul(&b)
        }
    }

    #[test]
    fn rank_invariant_under_transpose_and_gram() {
        for seed in 0..1000 {
            let m = random_low_rank(seed);
            let r = rank_and_nullspace(&m).rank;
            assert_eq!(r, rank_and_nullspace(&m.transpose()).rank, "seed {seed}");
            let g = m.gram_cols();
            // the Gram matrix squares singular values, so its cutoff is scaled accordingly
            let sigma = singular_values(&g);
            let tol = 1e-10 * sigma.first().copied().unwrap_or(0.0).max(1.0);
            assert_eq!(r, rank_and_nullspace_with(&g, Some(tol)).rank, "seed {seed}");
            assert_eq!(r, super::super::rational::exact_rank_f64(&m).unwrap(), "seed {seed}");
        }
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(seed in any::<u64>()) {
            let m = random_low_rank(seed);
            let info = rank_and_nullspace(&m);
            for c in 0..info.null_basis.cols() {
                let r = m.mul_vec(&info.null_basis.column(c));
                let worst = r.iter().fold(0.0f64, |a, v| a.max(v.abs()));
                prop_assert!(worst <= 10.0 * info.tolerance.max(f64::EPSILON));
            }
        }
    }
}
