//! Dense numeric kernel: matrices, symmetric eigensolver, SVD rank, exact
//! rational elimination and small factorizations.

mod eigen;
mod factor;
mod matrix;
pub mod rational;
mod svd;

pub use eigen::{cluster_values, distinct_count, sym_eigen, sym_eigen_with, Cluster, SymSpectrum};
pub use factor::{default_zero_tol, gram_schmidt_columns, pattern_of, psd_sqrt_factor};
pub use matrix::Matrix;
pub use svd::{
    default_rank_tolerance, rank_and_nullspace, rank_and_nullspace_with, singular_values, RankInfo,
};
