//! Simple undirected graphs, the named families and graph operations used
//! throughout the crate.

mod family;
mod independence;
pub mod io;
pub mod iso;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub use family::{build_named, Family};
pub use independence::independence_number;

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored normalized (`u < v`) and sorted lexicographically; the
/// dense adjacency matrix is kept alongside. Values are immutable: every
/// operation returns a new graph.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "GraphRepr", try_from = "GraphRepr")]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<bool>,
}

#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n, edges: g.edges }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;
    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, &r.edges)
    }
}

impl Graph {
    /// Build from an edge list. Rejects self-loops, duplicates (in either
    /// orientation) and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![false; n * n];
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidParameters(format!(
                    "edge ({a}, {b}) out of range for n = {n}"
                )));
            }
            if a == b {
                return Err(Error::InvalidParameters(format!("self-loop on vertex {a}")));
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(Error::InvalidParameters(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            adj[a * n + b] = true;
            adj[b * n + a] = true;
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
            adj,
        })
    }

    /// Build from a symmetric predicate on vertex pairs.
    pub fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, &edges).expect("generated edges are simple")
    }

    pub fn empty(n: usize) -> Self {
        Graph::from_fn(n, |_, _| false)
    }

    pub fn complete(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("K_n needs n >= 1".into()));
        }
        Ok(Graph::from_fn(n, |_, _| true))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameters("C_n needs n >= 3".into()));
        }
        Ok(Graph::from_fn(n, |i, j| j == i + 1 || (i == 0 && j == n - 1)))
    }

    pub fn path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("P_n needs n >= 1".into()));
        }
        Ok(Graph::from_fn(n, |i, j| j == i + 1))
    }

    /// `K_{1,t}` with the center at vertex 0.
    pub fn star(t: usize) -> Result<Self> {
        Graph::complete_bipartite(1, t)
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        Graph::complete_multipartite(&[a, b])
    }

    /// Complete multipartite graph; parts occupy consecutive vertex blocks.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Self> {
        if parts.is_empty() || parts.iter().all(|&p| p == 0) {
            return Err(Error::InvalidParameters(
                "complete multipartite graph needs a nonempty part".into(),
            ));
        }
        let mut part_of = Vec::new();
        for (idx, &p) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(idx, p));
        }
        Ok(Graph::from_fn(part_of.len(), |i, j| part_of[i] != part_of[j]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u * self.n + v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.adj[v * self.n + u])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    /// Degrees indexed by vertex.
    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Degrees sorted non-increasingly.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    /// Neighborhood of `v` as a bitmask (requires `n <= 64`).
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.neighbors(v).fold(0u64, |m, u| m | (1 << u))
    }

    pub fn adjacency_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| if self.adj[i * self.n + j] { 1.0 } else { 0.0 })
    }

    pub fn adjacency_i64(&self) -> Vec<Vec<i64>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.adj[i * self.n + j] as i64).collect())
            .collect()
    }

    /// Signless Laplacian `D + A`.
    pub fn signless_laplacian(&self) -> Matrix {
        let mut q = self.adjacency_matrix();
        for v in 0..self.n {
            q[(v, v)] = self.degree(v) as f64;
        }
        q
    }

    /// Vertex-edge incidence matrix, columns in edge order.
    pub fn incidence_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.m());
        for (j, &(u, v)) in self.edges.iter().enumerate() {
            m[(u, j)] = 1.0;
            m[(v, j)] = 1.0;
        }
        m
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| u != v && self.has_edge(u, v)))
    }

    pub fn complement(&self) -> Graph {
        Graph::from_fn(self.n, |i, j| !self.has_edge(i, j))
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.n;
        let n = self.n + other.n;
        Graph::from_fn(n, |i, j| {
            if j < off {
                self.has_edge(i, j)
            } else if i >= off {
                other.has_edge(i - off, j - off)
            } else {
                false
            }
        })
    }

    /// Join: disjoint union plus every edge between the two blocks.
    pub fn join(&self, other: &Graph) -> Graph {
        let off = self.n;
        Graph::from_fn(self.n + other.n, |i, j| {
            if j < off {
                self.has_edge(i, j)
            } else if i >= off {
                other.has_edge(i - off, j - off)
            } else {
                true
            }
        })
    }

    /// Cartesian product; vertex `(g, h)` has index `g * |V(H)| + h`.
    pub fn cartesian_product(&self, other: &Graph) -> Graph {
        let k = other.n;
        Graph::from_fn(self.n * k, |a, b| {
            let (g1, h1) = (a / k, a % k);
            let (g2, h2) = (b / k, b % k);
            (g1 == g2 && other.has_edge(h1, h2)) || (h1 == h2 && self.has_edge(g1, g2))
        })
    }

    /// Line graph; vertex `i` is the `i`-th edge of [`Graph::edges`].
    pub fn line_graph(&self) -> Graph {
        let e = &self.edges;
        Graph::from_fn(e.len(), |i, j| {
            let (a, b) = e[i];
            let (c, d) = e[j];
            a == c || a == d || b == c || b == d
        })
    }

    /// `self` with the edges of `h` removed (`K_n \ H` when `self = K_n`).
    /// Every edge of `h` must be present.
    pub fn remove_edges(&self, h: &Graph) -> Result<Graph> {
        if h.n != self.n {
            return Err(Error::InvalidParameters(format!(
                "edge removal needs equal vertex counts ({} vs {})",
                self.n, h.n
            )));
        }
        if let Some(&(u, v)) = h.edges.iter().find(|&&(u, v)| !self.has_edge(u, v)) {
            return Err(Error::InvalidParameters(format!("edge ({u}, {v}) is not present")));
        }
        Ok(Graph::from_fn(self.n, |i, j| self.has_edge(i, j) && !h.has_edge(i, j)))
    }

    /// Remove the perfect matching `left[i] -- right[i]` between two vertex sets.
    pub fn remove_perfect_matching(&self, left: &[usize], right: &[usize]) -> Result<Graph> {
        if left.len() != right.len() {
            return Err(Error::InvalidParameters(format!(
                "perfect matching needs sets of equal size ({} vs {})",
                left.len(),
                right.len()
            )));
        }
        let mut seen = BTreeSet::new();
        let mut pairs = Vec::with_capacity(left.len());
        for (&u, &v) in left.iter().zip(right) {
            if !seen.insert(u) || !seen.insert(v) {
                return Err(Error::InvalidParameters(format!(
                    "matching reuses a vertex at ({u}, {v})"
                )));
            }
            pairs.push((u, v));
        }
        let h = Graph::from_edges(self.n, &pairs)?;
        self.remove_edges(&h)
    }

    /// Relabel: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edges(self.n, &edges).expect("a permutation preserves simplicity")
    }

    /// Same vertex set and every edge of `self` is an edge of `other`.
    pub fn is_spanning_subgraph_of(&self, other: &Graph) -> bool {
        self.n == other.n && self.edges.iter().all(|&(u, v)| other.has_edge(u, v))
    }

    pub fn is_regular(&self) -> bool {
        let d = self.degrees();
        d.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}
