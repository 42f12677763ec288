//! Strong Spectral Property via the kernel of `X ↦ [A, X]` on symmetric
//! matrices supported on the non-edges of `A`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::rational::RatMatrix;
use crate::linalg::{default_rank_tolerance, pattern_of, rank_and_nullspace_with, sym_eigen, Matrix};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessResiduals {
    /// `max |A ∘ X|`
    pub hadamard: f64,
    /// `max |I ∘ X|`
    pub diagonal: f64,
    /// `max |AX − XA|`
    pub commutator: f64,
}

impl WitnessResiduals {
    pub fn max(&self) -> f64 {
        self.hadamard.max(self.diagonal).max(self.commutator)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SspResult {
    pub n: usize,
    /// Non-edges `(i, j)`, `i < j`, whose `X_ij` is unconstrained by `A ∘ X = 0`.
    pub free_variables: usize,
    pub kernel_dimension: usize,
    pub has_ssp: bool,
    /// Nullity recomputed over the rationals when `A` is integral.
    pub exact_kernel_dimension: Option<usize>,
    pub rank_tolerance: f64,
    pub smallest_singular_values: Vec<f64>,
    /// Kernel element scaled to max-entry 1.
    pub witness: Option<Matrix>,
    pub residuals: Option<WitnessResiduals>,
}

fn free_pairs(pattern: &Graph) -> Vec<(usize, usize)> {
    let n = pattern.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if !pattern.has_edge(i, j) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Coefficient of `X_pq` in entry `(i, j)` of `AX − XA` for `X = E_pq + E_qp`.
fn coeff(a: impl Fn(usize, usize) -> f64, i: usize, j: usize, p: usize, q: usize) -> f64 {
    let mut c = 0.0;
    if j == q {
        c += a(i, p);
    }
    if j == p {
        c += a(i, q);
    }
    if i == p {
        c -= a(q, j);
    }
    if i == q {
        c -= a(p, j);
    }
    c
}

fn constraint_rows(n: usize, full: bool) -> Vec<(usize, usize)> {
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if full || i < j {
                rows.push((i, j));
            }
        }
    }
    rows
}

/// Constraint matrix of the linear map. With `full = false` only strictly
/// upper commutator entries are used; the commutator of two symmetric
/// matrices is antisymmetric, so they determine the rest.
pub fn constraint_matrix(a: &Matrix, pattern: &Graph, full: bool) -> Matrix {
    let vars = free_pairs(pattern);
    let rows = constraint_rows(a.rows(), full);
    let at = |i: usize, j: usize| if i == j || pattern.has_edge(i, j) { a[(i, j)] } else { 0.0 };
    Matrix::from_fn(rows.len(), vars.len(), |r, c| {
        let (i, j) = rows[r];
        let (p, q) = vars[c];
        coeff(at, i, j, p, q)
    })
}

fn check_symmetric(a: &Matrix, tol: &Tolerances) -> Result<()> {
    if !a.is_square() {
        return Err(Error::Dimension(format!("SSP needs a square matrix, got {}×{}", a.rows(), a.cols())));
    }
    let asymmetry = a.asymmetry();
    if asymmetry > tol.symmetry * (1.0 + a.max_abs()) {
        return Err(Error::NotSymmetric { asymmetry });
    }
    Ok(())
}

/// Decide SSP for `A`, reading its graph from the entries with the default
/// zero threshold.
pub fn check_ssp(a: &Matrix, tol: &Tolerances) -> Result<SspResult> {
    check_symmetric(a, tol)?;
    let pattern = pattern_of(a, Some(tol.zero_pattern * (1.0 + a.max_abs())));
    check_ssp_with_pattern(a, &pattern, tol)
}

/// Decide SSP for `A` with a known graph. Entries of `A` outside `pattern`
/// are taken as exact zeros.
pub fn check_ssp_with_pattern(a: &Matrix, pattern: &Graph, tol: &Tolerances) -> Result<SspResult> {
    check_symmetric(a, tol)?;
    let n = a.rows();
    if pattern.n() != n {
        return Err(Error::Dimension(format!("pattern has {} vertices, matrix is {n}×{n}", pattern.n())));
    }
    let vars = free_pairs(pattern);
    if vars.is_empty() {
        return Ok(SspResult {
            n,
            free_variables: 0,
            kernel_dimension: 0,
            has_ssp: true,
            exact_kernel_dimension: a.is_integral().then_some(0),
            rank_tolerance: 0.0,
            smallest_singular_values: Vec::new(),
            witness: None,
            residuals: None,
        });
    }
    let c = constraint_matrix(a, pattern, false);
    let scale = c.max_abs().max(a.max_abs()).max(1.0);
    let cutoff = (tol.ssp_rank * scale).max(default_rank_tolerance(c.rows(), c.cols(), scale));
    let info = rank_and_nullspace_with(&c, Some(cutoff));
    let kernel_dimension = vars.len() - info.rank;

    let exact_kernel_dimension = if a.is_integral() {
        RatMatrix::from_integral(&c).map(|r| r.nullity())
    } else {
        None
    };

    let (witness, residuals) = if kernel_dimension > 0 {
        let x = witness_from(&info.null_basis, &vars, n);
        let r = residuals(a, pattern, &x);
        (Some(x), Some(r))
    } else {
        (None, None)
    };

    let mut tail: Vec<f64> = info.singular_values.iter().rev().take(3).copied().collect();
    tail.reverse();
    Ok(SspResult {
        n,
        free_variables: vars.len(),
        kernel_dimension,
        has_ssp: kernel_dimension == 0,
        exact_kernel_dimension,
        rank_tolerance: cutoff,
        smallest_singular_values: tail,
        witness,
        residuals,
    })
}

fn witness_from(null_basis: &Matrix, vars: &[(usize, usize)], n: usize) -> Matrix {
    let mut x = Matrix::zeros(n, n);
    for (r, &(p, q)) in vars.iter().enumerate() {
        x[(p, q)] = null_basis[(r, 0)];
        x[(q, p)] = null_basis[(r, 0)];
    }
    let m = x.max_abs();
    if m > 0.0 {
        x = x.scale(1.0 / m);
    }
    x
}

fn residuals(a: &Matrix, pattern: &Graph, x: &Matrix) -> WitnessResiduals {
    let n = a.rows();
    let mut hadamard: f64 = 0.0;
    let mut diagonal: f64 = 0.0;
    for i in 0..n {
        diagonal = diagonal.max(x[(i, i)].abs());
        for j in 0..n {
            if i != j && pattern.has_edge(i, j) {
                hadamard = hadamard.max((a[(i, j)] * x[(i, j)]).abs());
            }
        }
    }
    let commutator = a.mul(x).sub(&x.mul(a)).max_abs();
    WitnessResiduals { hadamard, diagonal, commutator }
}

/// Consequence of SSP for a supergraph on the same vertex set: some matrix
/// of the supergraph has the spectrum of `A`, so `q(G) ≤ q(A)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransferClaim {
    pub source: String,
    pub target: String,
    pub q_upper_bound: usize,
    pub spectrum_clusters: Vec<(f64, usize)>,
    pub added_edges: Vec<(usize, usize)>,
    pub basis: String,
}

pub fn supergraph_transfer(
    cert: &SspResult,
    a: &Matrix,
    h: &Graph,
    g: &Graph,
    tol: &Tolerances,
) -> Result<TransferClaim> {
    if !cert.has_ssp {
        return Err(Error::InvalidParameters(format!(
            "matrix does not have SSP (kernel dimension {})",
            cert.kernel_dimension
        )));
    }
    if a.rows() != h.n() || cert.n != h.n() {
        return Err(Error::Dimension("certificate and source graph differ in order".into()));
    }
    if !h.is_spanning_subgraph_of(g) {
        return Err(Error::NotSubgraph("source graph is not a spanning subgraph of the target".into()));
    }
    let spec = sym_eigen(a)?;
    let clusters: Vec<(f64, usize)> = spec.clusters().iter().map(|c| (c.value, c.multiplicity)).collect();
    let added_edges = g.edges().iter().copied().filter(|&(u, v)| !h.has_edge(u, v)).collect();
    Ok(TransferClaim {
        source: crate::graph::io::to_graph6(h),
        target: crate::graph::io::to_graph6(g),
        q_upper_bound: clusters.len(),
        spectrum_clusters: clusters,
        added_edges,
        basis: format!(
            "SSP of the source realization (kernel dimension 0, rank cutoff {:.1e}) extends to every spanning supergraph",
            cert.rank_tolerance.max(tol.ssp_rank)
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn prism(s: usize) -> Matrix {
        let m1 = Matrix::from_fn(s, s, |i, j| if i == j { 2.0 - s as f64 } else { 1.0 });
        let m2 = Matrix::from_fn(s, s, |i, j| if i == j { 0.0 } else { 1.0 });
        Matrix::vstack(&[&m1, &m2]).unwrap().gram_rows()
    }

    #[test]
    fn identity_has_no_ssp() {
        for n in 2..6 {
            let r = check_ssp(&Matrix::identity(n), &Tolerances::default()).unwrap();
            assert_eq!(r.kernel_dimension, n * (n - 1) / 2);
            assert_eq!(r.exact_kernel_dimension, Some(n * (n - 1) / 2));
            assert!(!r.has_ssp);
            assert!(r.residuals.unwrap().max() < 1e-12);
        }
    }

    #[test]
    fn prism_realization_has_ssp() {
        let a = prism(3);
        let target = Graph::complete(3).unwrap().cartesian_product(&Graph::complete(2).unwrap());
        assert!(crate::graph::iso::is_isomorphic(&pattern_of(&a, None), &target).unwrap());
        let r = check_ssp(&a, &Tolerances::default()).unwrap();
        assert!(r.has_ssp);
        assert_eq!(r.exact_kernel_dimension, Some(0));
    }

    #[test]
    fn complete_pattern_is_vacuous() {
        let a = Matrix::ones(4, 4);
        let r = check_ssp(&a, &Tolerances::default()).unwrap();
        assert!(r.has_ssp && r.free_variables == 0);
    }

    #[test]
    fn path_adjacency_float_matches_exact() {
        let a = Graph::path(4).unwrap().adjacency_matrix();
        let r = check_ssp(&a, &Tolerances::default()).unwrap();
        assert_eq!(Some(r.kernel_dimension), r.exact_kernel_dimension);
        if let Some(res) = r.residuals {
            assert!(res.max() <= 1e-7 * (1.0 + a.max_abs()));
        }
    }

    #[test]
    fn half_system_matches_full_system() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.random_range(2..=7);
            let g = Graph::from_fn(n, |_, _| rng.random_bool(0.5));
            let a = Matrix::from_fn(n, n, |i, j| {
                if i == j {
                    ((i * 7 + 3) % 5) as f64
                } else if g.has_edge(i, j) {
                    1.0 + ((i + j) % 3) as f64
                } else {
                    0.0
                }
            });
            let half = RatMatrix::from_integral(&constraint_matrix(&a, &g, false)).unwrap();
            let full = RatMatrix::from_integral(&constraint_matrix(&a, &g, true)).unwrap();
            assert_eq!(half.nullity(), full.nullity());
            let r = check_ssp_with_pattern(&a, &g, &Tolerances::default()).unwrap();
            assert_eq!(Some(r.kernel_dimension), r.exact_kernel_dimension, "{g:?}");
        }
    }

    #[test]
    fn permutation_invariance() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let a = prism(4);
        let base = check_ssp(&a, &Tolerances::default()).unwrap().kernel_dimension;
        for _ in 0..10 {
            let mut p: Vec<usize> = (0..8).collect();
            p.shuffle(&mut rng);
            let b = a.permute_symmetric(&p);
            assert_eq!(check_ssp(&b, &Tolerances::default()).unwrap().kernel_dimension, base);
        }
    }

    #[test]
    fn rejects_asymmetric() {
        let a = Matrix::from_rows(&[vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(matches!(check_ssp(&a, &Tolerances::default()), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn transfer_to_supergraph() {
        let tol = Tolerances::default();
        let a = prism(3);
        let h = pattern_of(&a, None);
        let cert = check_ssp(&a, &tol).unwrap();
        let claim = supergraph_transfer(&cert, &a, &h, &h, &tol).unwrap();
        assert_eq!(claim.q_upper_bound, 2);
        assert!(claim.added_edges.is_empty());
        let g = Graph::complete(6).unwrap();
        let claim = supergraph_transfer(&cert, &a, &h, &g, &tol).unwrap();
        assert_eq!(claim.added_edges.len(), 15 - 9);
        assert!(matches!(supergraph_transfer(&cert, &a, &g, &h, &tol), Err(Error::NotSubgraph(_)) | Err(Error::Dimension(_))));
        let not = check_ssp(&Matrix::identity(6), &tol).unwrap();
        assert!(supergraph_transfer(&not, &Matrix::identity(6), &Graph::empty(6), &g, &tol).is_err());
    }
}
