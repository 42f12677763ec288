use serde::{Deserialize, Serialize};

use super::CliqueCover;
use crate::error::{Error, Result};
use crate::linalg::{pattern_of, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IncidenceMode {
    Binary,
    Weighted,
}

/// Vertex-clique incidence matrix (`n × k`) with the cover it came from.
#[derive(Debug, Clone)]
pub struct IncidenceMatrix {
    pub matrix: Matrix,
    pub mode: IncidenceMode,
    pub cover: CliqueCover,
}

/// Build the incidence matrix of `cover`.
///
/// Weighted mode takes an `n × k` weight matrix that must be nonzero exactly
/// on the incidence pairs, and additionally checks that `M Mᵀ` has the
/// off-diagonal pattern of the cover's graph. Without weights every
/// incidence weight is one.
pub fn incidence(cover: &CliqueCover, mode: IncidenceMode, weights: Option<&Matrix>) -> Result<IncidenceMatrix> {
    let (n, k) = (cover.n(), cover.k());
    let mut member = vec![vec![false; k]; n];
    for (j, c) in cover.cliques().iter().enumerate() {
        for &v in c {
            member[v][j] = true;
        }
    }
    let binary = Matrix::from_fn(n, k, |i, j| member[i][j] as u8 as f64);
    let matrix = match (mode, weights) {
        (IncidenceMode::Binary, None) | (IncidenceMode::Weighted, None) => binary,
        (IncidenceMode::Binary, Some(_)) => {
            return Err(Error::InvalidParameters("binary incidence takes no weights".into()))
        }
        (IncidenceMode::Weighted, Some(w)) => {
            if (w.rows(), w.cols()) != (n, k) {
                return Err(Error::Dimension(format!(
                    "weights are {}x{}, cover needs {n}x{k}",
                    w.rows(),
                    w.cols()
                )));
            }
            for i in 0..n {
                for j in 0..k {
                    match (member[i][j], w[(i, j)] != 0.0) {
                        (true, false) => return Err(Error::ZeroWeight { vertex: i, clique: j }),
                        (false, true) => {
                            return Err(Error::InvalidCover(format!(
                                "weight on vertex {i} outside clique {j}"
                            )))
                        }
                        _ => {}
                    }
                }
            }
            let q = w.gram_rows();
            if pattern_of(&q, None) != *cover.graph() {
                return Err(Error::InvalidCover(
                    "weighted product M Mᵀ does not have the pattern of the graph".into(),
                ));
            }
            w.clone()
        }
    };
    Ok(IncidenceMatrix {
        matrix,
        mode,
        cover: cover.clone(),
    })
}

/// `(Q_F, R_F) = (M Mᵀ, Mᵀ M)`.
pub fn clique_signless_laplacian(inc: &IncidenceMatrix) -> (Matrix, Matrix) {
    (inc.matrix.gram_rows(), inc.matrix.gram_cols())
}

/// `Q_F` and `R_F` of the binary incidence matrix in integer arithmetic.
pub fn integer_products(cover: &CliqueCover) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let (n, k) = (cover.n(), cover.k());
    let mut q = vec![vec![0i64; n]; n];
    for c in cover.cliques() {
        for &u in c {
            for &v in c {
                q[u][v] += 1;
            }
        }
    }
    let mut mask = vec![vec![false; n]; k];
    for (j, c) in cover.cliques().iter().enumerate() {
        for &v in c {
            mask[j][v] = true;
        }
    }
    let r = (0..k)
        .map(|a| (0..k).map(|b| (0..n).filter(|&v| mask[a][v] && mask[b][v]).count() as i64).collect())
        .collect();
    (q, r)
}

/// `Q_F − 𝒜 = diag(t)` and `R_F − 𝒜(P_G) = diag(s)`, exactly.
pub fn check_partition_identities(cover: &CliqueCover) -> Result<()> {
    let (q, r) = integer_products(cover);
    let a = cover.graph().adjacency_i64();
    let t = cover.clique_degrees();
    for i in 0..cover.n() {
        for j in 0..cover.n() {
            let want = if i == j { t[i] as i64 } else { 0 };
            if q[i][j] - a[i][j] != want {
                return Err(Error::Verification(format!(
                    "Q_F - A differs from diag(t) at ({i}, {j}): {} vs {want}",
                    q[i][j] - a[i][j]
                )));
            }
        }
    }
    let p = cover.partition_graph().adjacency_i64();
    let s = cover.sizes();
    for i in 0..cover.k() {
        for j in 0..cover.k() {
            let want = if i == j { s[i] as i64 } else { 0 };
            if r[i][j] - p[i][j] != want {
                return Err(Error::Verification(format!(
                    "R_F - A(P_G) differs from diag(s) at ({i}, {j}): {} vs {want}",
                    r[i][j] - p[i][j]
                )));
            }
        }
    }
    Ok(())
}
