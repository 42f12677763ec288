use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{Provenance, Q2Certificate};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{sym_eigen_with, Matrix};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub iterations: usize,
    /// Largest off-pattern entry of the projection iterate.
    pub pattern_residual: f64,
    /// `‖Y² − Y‖_max` of the pattern iterate.
    pub idempotency_residual: f64,
    /// Pattern residual sampled every 250 iterations.
    pub history: Vec<f64>,
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(Box<Q2Certificate>, SearchTrace),
    Failed(SearchTrace),
}

impl SearchOutcome {
    pub fn certificate(self) -> Option<Q2Certificate> {
        match self {
            SearchOutcome::Found(c, _) => Some(*c),
            SearchOutcome::Failed(_) => None,
        }
    }

    pub fn trace(&self) -> &SearchTrace {
        match self {
            SearchOutcome::Found(_, t) | SearchOutcome::Failed(t) => t,
        }
    }
}

/// Top-`k` eigenvectors as columns.
fn top_vectors(y: &Matrix, k: usize, tol: &Tolerances) -> Result<Matrix> {
    let spec = sym_eigen_with(y, tol)?;
    Ok(Matrix::from_fn(y.rows(), k, |i, j| spec.eigenvectors[(i, j)]))
}

fn pattern_step(x: &Matrix, g: &Graph, floor: f64, signs: &[f64]) -> Matrix {
    let n = g.n();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            x[(i, i)]
        } else if g.has_edge(i, j) {
            let v = x[(i, j)];
            if v.abs() >= floor {
                v
            } else if v != 0.0 {
                floor * v.signum()
            } else {
                floor * signs[i.min(j) * n + i.max(j)]
            }
        } else {
            0.0
        }
    })
}

fn off_pattern(x: &Matrix, g: &Graph) -> f64 {
    let n = g.n();
    let mut r: f64 = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                r = r.max(x[(i, j)].abs());
            }
        }
    }
    r
}

/// Alternating projections between rank-`k` orthogonal projections and the
/// symmetric matrices with the zero pattern of `g` (edge entries kept at
/// least `entry_floor` in magnitude). `start`, when given, is the first
/// iterate; otherwise a seeded random symmetric matrix with `g`'s pattern.
/// A result is only reported after full certificate verification.
pub fn numeric_q2_search(
    g: &Graph,
    k: usize,
    seed: u64,
    start: Option<(&Matrix, &str)>,
    tol: &Tolerances,
) -> Result<SearchOutcome> {
    let n = g.n();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameters(format!("need 1 ≤ k ≤ n − 1, got k = {k}, n = {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let signs: Vec<f64> = (0..n * n).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
    let mut x = match start {
        Some((m, _)) => {
            if m.rows() != n || !m.is_square() {
                return Err(Error::Dimension("starting matrix has the wrong order".into()));
            }
            m.clone()
        }
        None => {
            let r = Matrix::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
            r.add(&r.transpose()).scale(0.5)
        }
    };
    let floor = tol.entry_floor;
    let mut trace = SearchTrace {
        iterations: 0,
        pattern_residual: f64::INFINITY,
        idempotency_residual: f64::INFINITY,
        history: Vec::new(),
    };
    let mut v = Matrix::zeros(n, k);
    for it in 0..tol.search_iterations {
        let y = pattern_step(&x, g, floor, &signs);
        v = top_vectors(&y, k, tol)?;
        x = v.gram_rows();
        trace.iterations = it + 1;
        trace.pattern_residual = off_pattern(&x, g);
        trace.idempotency_residual = y.mul(&y).sub(&y).max_abs();
        if it % 250 == 0 {
            trace.history.push(trace.pattern_residual);
        }
        if trace.pattern_residual < tol.search_residual && trace.idempotency_residual < tol.search_residual {
            break;
        }
    }
    let converged = trace.pattern_residual < tol.search_residual && trace.idempotency_residual < tol.search_residual;
    if !converged {
        return Ok(SearchOutcome::Failed(trace));
    }
    let provenance = Provenance::NumericSearch {
        seed,
        k,
        iterations: trace.iterations,
        seeded_from: start.map(|(_, name)| name.to_string()),
    };
    let cert = Q2Certificate::new(g.clone(), v, provenance, tol)?;
    if cert.is_verified() {
        Ok(SearchOutcome::Found(Box::new(cert), trace))
    } else {
        Ok(SearchOutcome::Failed(trace))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_named;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn find(g: &Graph, ks: &[usize], seeds: std::ops::Range<u64>) -> Option<Q2Certificate> {
        for &k in ks {
            for seed in seeds.clone() {
                if let Some(c) = numeric_q2_search(g, k, seed, None, &tol()).unwrap().certificate() {
                    return Some(c);
                }
            }
        }
        None
    }

    #[test]
    fn complete_graph_rank_one() {
        let g = Graph::complete(5).unwrap();
        let c = find(&g, &[1], 0..5).expect("K5 has a rank-one realization");
        assert!(c.is_verified());
        assert_eq!(c.spectrum_clusters.iter().map(|x| x.1).collect::<Vec<_>>(), vec![1, 4]);
        assert!((c.c - 1.0).abs() < 1e-8);
    }

    #[test]
    fn four_cycle_rank_two() {
        let c4 = Graph::empty(2).join(&Graph::empty(2));
        let c = find(&c4, &[2], 0..5).expect("C4 is realized");
        assert!(c.is_verified());
    }

    #[test]
    fn join_with_independent_set() {
        // complement of K_{2,2} ∨ K_1 ∨ 3K_1 case
        let g = build_named("join(join(bipartite:2,2,complete:1),empty:3)").unwrap();
        assert_eq!(g.n(), 8);
        let c = find(&g, &[2, 3, 4, 5], 0..5).expect("certified");
        assert!(c.is_verified());
    }

    #[test]
    fn longer_run_gives_same_result() {
        let g = Graph::cycle(4).unwrap();
        let mut t = tol();
        let a = numeric_q2_search(&g, 2, 1, None, &t).unwrap().certificate().unwrap();
        t.search_iterations *= 2;
        let b = numeric_q2_search(&g, 2, 1, None, &t).unwrap().certificate().unwrap();
        assert_eq!(a.target, b.target);
        assert_eq!(a.spectrum_clusters.len(), b.spectrum_clusters.len());
        assert_eq!(a.m, b.m);
    }

    #[test]
    fn impossible_target_fails_without_certificate() {
        // a path has q = n, so no rank-k projection fits
        let g = Graph::path(4).unwrap();
        let mut t = tol();
        t.search_iterations = 300;
        for k in 1..4 {
            let out = numeric_q2_search(&g, k, 0, None, &t).unwrap();
            assert!(matches!(out, SearchOutcome::Failed(_)), "k={k}");
            assert!(out.trace().pattern_residual > t.search_residual);
        }
    }

    #[test]
    fn seeded_start_from_construction() {
        let cert = super::super::construct_prism(4, &tol()).unwrap();
        let p = cert.matrix().scale(1.0 / cert.c);
        let mut g = cert.target.complement();
        // add one edge of the complement back
        let extra = g.edges()[0];
        g = Graph::from_edges(8, &[extra]).unwrap();
        let target = cert.target.complement().remove_edges(&g).unwrap().complement();
        let out = numeric_q2_search(&target, 4, 0, Some((&p, "prism(s=4)")), &tol()).unwrap();
        let found = out.certificate().expect("SSP start converges on a supergraph");
        assert!(found.is_verified());
        assert!(matches!(found.provenance, Provenance::NumericSearch { seeded_from: Some(_), .. }));
    }

    #[test]
    fn bad_k_rejected() {
        let g = Graph::complete(3).unwrap();
        assert!(numeric_q2_search(&g, 0, 0, None, &tol()).is_err());
        assert!(numeric_q2_search(&g, 3, 0, None, &tol()).is_err());
    }
}
