use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{gram_schmidt_columns, psd_sqrt_factor, sym_eigen, Matrix};
use crate::tolerances::Tolerances;

const MAX_ATTEMPTS: usize = 1000;
const NEWTON_STEPS: usize = 200;

/// Required pattern of the rows appended below `M₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramTarget {
    /// Graph on the new rows: `(M₂M₂ᵀ)_ab ≠ 0` exactly on its edges.
    pub pattern2: Graph,
    /// `cross[i][j]`: whether `(M₁M₂ᵀ)_ij` must be nonzero.
    pub cross: Vec<Vec<bool>>,
}

impl GramTarget {
    /// Read both patterns off a target graph whose first `n1` vertices are the rows of `M₁`.
    pub fn from_graph(target: &Graph, n1: usize) -> GramTarget {
        let n2 = target.n() - n1;
        let pattern2 = Graph::from_fn(n2, |a, b| target.has_edge(n1 + a, n1 + b));
        let cross = (0..n1).map(|i| (0..n2).map(|j| target.has_edge(i, n1 + j)).collect()).collect();
        GramTarget { pattern2, cross }
    }
}

enum Entry {
    Inner(usize, usize),
    Cross(usize, usize),
}

struct Problem<'a> {
    m1: &'a Matrix,
    zeros: Vec<Entry>,
    nonzeros: Vec<Entry>,
    pairs: Vec<(usize, usize)>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl Problem<'_> {
    fn value(&self, m2: &Matrix, e: &Entry) -> f64 {
        match *e {
            Entry::Inner(a, b) => dot(m2.row(a), m2.row(b)),
            Entry::Cross(i, j) => dot(self.m1.row(i), m2.row(j)),
        }
    }

    fn residual(&self, m2: &Matrix) -> Vec<f64> {
        self.zeros.iter().map(|e| self.value(m2, e)).collect()
    }

    /// Derivative of each zero entry along the rotation of rows `(p, q)`.
    fn jacobian(&self, m2: &Matrix) -> Matrix {
        let drow = |p: usize, q: usize, r: usize| -> Option<Vec<f64>> {
            if r == p {
                Some(m2.row(q).iter().map(|x| -x).collect())
            } else if r == q {
                Some(m2.row(p).to_vec())
            } else {
                None
            }
        };
        Matrix::from_fn(self.zeros.len(), self.pairs.len(), |ci, pi| {
            let (p, q) = self.pairs[pi];
            match self.zeros[ci] {
                Entry::Inner(a, b) => {
                    let da = drow(p, q, a).map_or(0.0, |d| dot(&d, m2.row(b)));
                    let db = drow(p, q, b).map_or(0.0, |d| dot(m2.row(a), &d));
                    da + db
                }
                Entry::Cross(i, j) => drow(p, q, j).map_or(0.0, |d| dot(self.m1.row(i), &d)),
            }
        })
    }
}

fn rotate_rows(m: &mut Matrix, p: usize, q: usize, theta: f64) {
    let (s, c) = theta.sin_cos();
    for col in 0..m.cols() {
        let (x, y) = (m[(p, col)], m[(q, col)]);
        m[(p, col)] = c * x - s * y;
        m[(q, col)] = s * x + c * y;
    }
}

/// Solve `(JJᵀ + μI) y = r` by Cholesky.
fn solve_normal(j: &Matrix, r: &[f64], mu: f64) -> Option<Vec<f64>> {
    let n = r.len();
    let mut a = j.gram_rows();
    for i in 0..n {
        a[(i, i)] += mu;
    }
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..=i {
            let s: f64 = (0..k).map(|t| l[(i, t)] * l[(k, t)]).sum();
            if i == k {
                let d = a[(i, i)] - s;
                if d <= 0.0 {
                    return None;
                }
                l[(i, i)] = d.sqrt();
            } else {
                l[(i, k)] = (a[(i, k)] - s) / l[(k, k)];
            }
        }
    }
    let mut y = vec![0.0; n];
    for i in 0..n {
        y[i] = (r[i] - (0..i).map(|t| l[(i, t)] * y[t]).sum::<f64>()) / l[(i, i)];
    }
    for i in (0..n).rev() {
        y[i] = (y[i] - (i + 1..n).map(|t| l[(t, i)] * y[t]).sum::<f64>()) / l[(i, i)];
    }
    Some(y)
}

fn base_factor(s: &Matrix, n2: usize) -> Result<Matrix> {
    let k = s.rows();
    if n2 >= k {
        let b = psd_sqrt_factor(s)?;
        return Ok(Matrix::from_fn(n2, k, |i, j| if i < k { b[(i, j)] } else { 0.0 }));
    }
    let spec = sym_eigen(s)?;
    let scale = 1.0 + s.max_abs();
    if let Some(&dropped) = spec.eigenvalues.get(n2) {
        if dropped > 1e-10 * scale {
            return Err(Error::GramCompletion(format!(
                "cI − M₁ᵀM₁ has rank above the {n2} available rows (eigenvalue {dropped:.3e})"
            )));
        }
    }
    let min = spec.eigenvalues.last().copied().unwrap_or(0.0);
    if min < -1e-10 * scale {
        return Err(Error::Indefinite { min_eigenvalue: min });
    }
    let v = &spec.eigenvectors;
    Ok(Matrix::from_fn(n2, k, |i, j| spec.eigenvalues[i].max(0.0).sqrt() * v[(j, i)]))
}

fn random_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let g = Matrix::from_fn(n, n, |_, _| StandardNormal.sample(rng));
        if let Ok(q) = gram_schmidt_columns(&g) {
            return q;
        }
    }
}

/// Rows `M₂` with `M₂ᵀM₂ = cI − M₁ᵀM₁` whose Gram pattern and cross pattern
/// with `M₁` match `target`. Starts from a PSD square root and searches over
/// left orthogonal factors, which leave `M₂ᵀM₂` unchanged.
pub fn gram_complete(m1: &Matrix, c: f64, target: &GramTarget, seed: u64, tol: &Tolerances) -> Result<Matrix> {
    let k = m1.cols();
    let n2 = target.pattern2.n();
    if target.cross.len() != m1.rows() || target.cross.iter().any(|r| r.len() != n2) {
        return Err(Error::Dimension("cross pattern must be n₁ × n₂".into()));
    }
    let s = Matrix::identity(k).scale(c).sub(&m1.gram_cols());
    let b0 = base_factor(&s, n2)?;

    let mut zeros = Vec::new();
    let mut nonzeros = Vec::new();
    for a in 0..n2 {
        for b in a + 1..n2 {
            let e = Entry::Inner(a, b);
            if target.pattern2.has_edge(a, b) { nonzeros.push(e) } else { zeros.push(e) }
        }
    }
    for (i, row) in target.cross.iter().enumerate() {
        for (j, &need) in row.iter().enumerate() {
            let e = Entry::Cross(i, j);
            if need { nonzeros.push(e) } else { zeros.push(e) }
        }
    }
    let pairs: Vec<(usize, usize)> = (0..n2).flat_map(|p| (p + 1..n2).map(move |q| (p, q))).collect();
    let prob = Problem { m1, zeros, nonzeros, pairs };

    let scale = 1.0 + c;
    let zero_goal = 1e-13 * scale;
    // keep required nonzeros well clear of the pattern threshold
    let margin = 1e3 * tol.zero_pattern * scale;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = f64::INFINITY;
    for _ in 0..MAX_ATTEMPTS {
        let mut m2 = random_orthogonal(n2, &mut rng).mul(&b0);
        let mut res = prob.residual(&m2);
        let mut norm = res.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        for _ in 0..NEWTON_STEPS {
            if norm <= zero_goal || prob.pairs.is_empty() {
                break;
            }
            let j = prob.jacobian(&m2);
            let Some(y) = solve_normal(&j, &res, 1e-12 * scale * scale) else { break };
            let step = j.transpose().mul_vec(&y);
            for (&(p, q), &d) in prob.pairs.iter().zip(&step) {
                rotate_rows(&mut m2, p, q, -d);
            }
            res = prob.residual(&m2);
            norm = res.iter().fold(0.0f64, |a, x| a.max(x.abs()));
        }
        best = best.min(norm);
        if norm > zero_goal {
            continue;
        }
        if prob.nonzeros.iter().all(|e| prob.value(&m2, e).abs() > margin) {
            return Ok(m2);
        }
    }
    Err(Error::GramCompletion(format!(
        "pattern not achieved in {MAX_ATTEMPTS} attempts; best zero residual {best:.3e}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pattern_of;

    fn c5_m1() -> Matrix {
        Matrix::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1.0, 0.0],
            vec![-1.0, 1.0, 1.0],
            vec![0.0, -1.0, 1.0],
            vec![0.0, 0.0, 1.0],
        ])
        .unwrap()
    }

    fn bull_m1() -> Matrix {
        let r = 2f64.sqrt();
        Matrix::from_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
            vec![0.0, r, 0.0],
            vec![0.0, 0.0, r],
        ])
        .unwrap()
    }

    fn complement_target(n: usize, complement_edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, complement_edges).unwrap().complement()
    }

    fn check(m1: &Matrix, m2: &Matrix, c: f64, target: &Graph) {
        let m = Matrix::vstack(&[m1, m2]).unwrap();
        assert!(m.gram_cols().sub(&Matrix::identity(3).scale(c)).max_abs() < 1e-10);
        assert_eq!(&pattern_of(&m.gram_rows(), None), target);
    }

    #[test]
    fn c5_join_completion() {
        let target = complement_target(8, &[(0, 3), (0, 4), (1, 2), (1, 4), (2, 3), (2, 5)]);
        let m1 = c5_m1();
        let m2 = gram_complete(&m1, 4.0, &GramTarget::from_graph(&target, 5), 1, &Tolerances::default()).unwrap();
        check(&m1, &m2, 4.0, &target);
    }

    #[test]
    fn bull_join_completion_matches_printed_gram() {
        let target = complement_target(8, &[(0, 3), (0, 4), (1, 3), (2, 4), (2, 5), (3, 4)]);
        let m1 = bull_m1();
        let m2 = gram_complete(&m1, 9.0, &GramTarget::from_graph(&target, 5), 2, &Tolerances::default()).unwrap();
        check(&m1, &m2, 9.0, &target);
        // independent: a = 9 − 3 on the diagonal, −1, −1, 0 off it
        let expect = Matrix::from_rows(&[vec![6.0, -1.0, -1.0], vec![-1.0, 6.0, 0.0], vec![-1.0, 0.0, 6.0]]).unwrap();
        assert!(m2.gram_cols().sub(&expect).max_abs() < 1e-10);
    }

    #[test]
    fn low_c_is_indefinite() {
        let target = GramTarget { pattern2: Graph::complete(3).unwrap(), cross: vec![vec![true; 3]; 5] };
        let err = gram_complete(&c5_m1(), 2.5, &target, 0, &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::Indefinite { .. }), "{err:?}");
    }

    #[test]
    fn more_rows_than_columns() {
        // star centre orthogonal to every leaf, leaves pairwise non-orthogonal
        let n2 = 5;
        let m1 = Matrix::from_rows(&[vec![1.0, 2.0, 2.0], vec![2.0, 1.0, -2.0], vec![2.0, -2.0, 1.0]]).unwrap();
        let pattern2 = Graph::from_fn(n2, |a, b| a != 0 && b != 0);
        let target = GramTarget { pattern2, cross: vec![vec![true; n2]; 3] };
        let m2 = gram_complete(&m1, 11.0, &target, 3, &Tolerances::default()).unwrap();
        assert!(m2.gram_cols().sub(&Matrix::identity(3).scale(2.0)).max_abs() < 1e-10);
        for leaf in 1..n2 {
            assert!(dot(m2.row(0), m2.row(leaf)).abs() < 1e-10);
        }
    }

    #[test]
    fn unreachable_pattern_fails_cleanly() {
        // two rows in R^1 cannot be orthogonal while both nonzero
        let m1 = Matrix::from_rows(&[vec![1.0]]).unwrap();
        let target = GramTarget { pattern2: Graph::empty(2), cross: vec![vec![true, true]] };
        let err = gram_complete(&m1, 2.0, &target, 0, &Tolerances::default()).unwrap_err();
        assert!(matches!(err, Error::GramCompletion(_)), "{err:?}");
    }
}
