//! Exact rational Gaussian elimination for integer/rational matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Matrix;

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RatMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_i64(rows: usize, cols: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut m = RatMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = BigRational::from_integer(BigInt::from(f(i, j)));
            }
        }
        m
    }

    /// Exact copy of an integer-valued float matrix; `None` if any entry is fractional.
    pub fn from_integral(m: &Matrix) -> Option<Self> {
        if !m.is_integral() {
            return None;
        }
        Some(RatMatrix::from_i64(m.rows(), m.cols(), |i, j| m[(i, j)] as i64))
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = &out.data[idx] + a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn to_f64(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j).to_f64().unwrap_or(f64::NAN)
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Inverse of a square nonsingular matrix, `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = RatMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        let rank = aug.row_reduce(n);
        if rank < n {
            return None;
        }
        let mut inv = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Reduced row echelon form in place, pivoting only within the first
    /// `pivot_cols` columns. Returns the rank of that leading block.
    fn row_reduce(&mut self, pivot_cols: usize) -> usize {
        let mut rank = 0;
        for col in 0..pivot_cols {
            if rank == self.rows {
                break;
            }
            let Some(p) = (rank..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, rank * self.cols + j);
                }
            }
            let inv = self.get(rank, col).recip();
            for j in 0..self.cols {
                let v = self.get(rank, j) * &inv;
                self.set(rank, j, v);
            }
            for r in 0..self.rows {
                if r == rank {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self.get(r, j) - &factor * self.get(rank, j);
                    self.set(r, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rank by fraction-free (Bareiss) elimination after clearing each
    /// row's denominators; entries stay bounded by minors of the input.
    pub fn rank(&self) -> usize {
        let (rows, cols) = (self.rows, self.cols);
        let mut a: Vec<Vec<BigInt>> = (0..rows)
            .map(|i| {
                let row = &self.data[i * cols..(i + 1) * cols];
                let lcm = row.iter().fold(BigInt::one(), |l, v| num_integer::Integer::lcm(&l, v.denom()));
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect()
            })
            .collect();
        let mut rank = 0;
        let mut prev = BigInt::one();
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(p, rank);
            let pivot = a[rank][col].clone();
            for r in rank + 1..rows {
                let factor = a[r][col].clone();
                for j in col + 1..cols {
                    let v = (&pivot * &a[r][j] - &factor * &a[rank][j]) / &prev;
                    a[r][j] = v;
                }
                a[r][col] = BigInt::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn max_abs(&self) -> BigRational {
        self.data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}

/// Exact rank of an integer-valued float matrix.
pub fn exact_rank_f64(m: &Matrix) -> Option<usize> {
    RatMatrix::from_integral(m).map(|r| r.rank())
}

/// Orthogonal projection `M (MᵀM)⁻¹ Mᵀ` onto the column space of a full
/// column rank rational matrix, computed exactly.
pub fn column_space_projection(m: &RatMatrix) -> Option<RatMatrix> {
    let mt = m.transpose();
    let gram_inv = mt.mul(m).inverse()?;
    Some(m.mul(&gram_inv).mul(&mt))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_of_small_matrices() {
        let m = RatMatrix::from_i64(3, 3, |i, j| (i * 3 + j) as i64);
        assert_eq!(m.rank(), 2);
        assert_eq!(RatMatrix::zeros(2, 5).rank(), 0);
        assert_eq!(RatMatrix::from_i64(4, 4, |i, j| (i == j) as i64).rank(), 4);
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64(3, 3, |i, j| [[2, 1, 0], [1, 3, 1], [0, 1, 4]][i][j]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::from_i64(3, 3, |i, j| (i == j) as i64));
        let singular = RatMatrix::from_i64(2, 2, |_, _| 1);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn projection_is_idempotent() {
        let m = RatMatrix::from_i64(4, 2, |i, j| [[1, 0], [1, 1], [0, 2], [3, -1]][i][j]);
        let p = column_space_projection(&m).unwrap();
        assert_eq!(p.mul(&p), p);
        assert_eq!(p.transpose(), p);
    }

    #[test]
    fn bareiss_rank_matches_gauss_jordan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (r, c) = (rng.random_range(1..8), rng.random_range(1..8));
            let low = rng.random_range(0..=r.min(c));
            // product of r×low and low×c has rank ≤ low
            let av: Vec<i64> = (0..r * low).map(|_| rng.random_range(-3..=3)).collect();
            let bv: Vec<i64> = (0..low * c).map(|_| rng.random_range(-3..=3)).collect();
            let a = RatMatrix::from_i64(r, low, |i, j| av[i * low + j]);
            let b = RatMatrix::from_i64(low, c, |i, j| bv[i * c + j]);
            let mut m = if low == 0 { RatMatrix::zeros(r, c) } else { a.mul(&b) };
            let j = rng.random_range(0..c);
            let half = BigRational::new(BigInt::from(1), BigInt::from(2));
            for i in 0..r {
                let v = m.get(i, j) * &half;
                m.set(i, j, v);
            }
            let mut work = m.clone();
            assert_eq!(m.rank(), work.row_reduce(c));
        }
    }
}
