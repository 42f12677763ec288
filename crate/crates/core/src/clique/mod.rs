//! Clique partitions and edge clique covers, vertex-clique incidence
//! matrices, `Q_F`, `R_F` and the clique partition graph `P_G`.

mod incidence;
mod partition;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub use incidence::{
    check_partition_identities, clique_signless_laplacian, incidence, integer_products,
    IncidenceMatrix, IncidenceMode,
};
pub use partition::{
    edge_partition, enumerate_partitions, greedy_clique_partition, min_clique_partition,
    PartitionEnumeration, EXACT_PARTITION_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverKind {
    Partition,
    Cover,
}

/// A validated clique partition or edge clique cover of a fixed graph.
#[derive(Debug, Clone, PartialEq)]
pub struct CliqueCover {
    pub(crate) graph: Graph,
    pub(crate) cliques: Vec<Vec<usize>>,
    pub(crate) kind: CoverKind,
    pub(crate) provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptyClique { clique: usize },
    VertexOutOfRange { clique: usize, vertex: usize },
    RepeatedVertex { clique: usize, vertex: usize },
    NotAClique { clique: usize, u: usize, v: usize },
    Uncovered { u: usize, v: usize },
    Overcovered { u: usize, v: usize, cliques: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyClique { clique } => write!(f, "clique {clique} is empty"),
            Violation::VertexOutOfRange { clique, vertex } => {
                write!(f, "clique {clique} names vertex {vertex} outside the graph")
            }
            Violation::RepeatedVertex { clique, vertex } => {
                write!(f, "clique {clique} repeats vertex {vertex}")
            }
            Violation::NotAClique { clique, u, v } => {
                write!(f, "clique {clique} is not complete: {u} and {v} are not adjacent")
            }
            Violation::Uncovered { u, v } => write!(f, "edge ({u}, {v}) is not covered"),
            Violation::Overcovered { u, v, cliques } => {
                write!(f, "edge ({u}, {v}) lies in several cliques {cliques:?}")
            }
        }
    }
}

/// Every violation of the cover conditions, in a deterministic order.
pub fn cover_violations(g: &Graph, cliques: &[Vec<usize>], kind: CoverKind) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut owners: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (j, c) in cliques.iter().enumerate() {
        if c.is_empty() {
            out.push(Violation::EmptyClique { clique: j });
            continue;
        }
        let mut seen = vec![false; g.n()];
        let mut valid = Vec::new();
        for &v in c {
            if v >= g.n() {
                out.push(Violation::VertexOutOfRange { clique: j, vertex: v });
            } else if seen[v] {
                out.push(Violation::RepeatedVertex { clique: j, vertex: v });
            } else {
                seen[v] = true;
                valid.push(v);
            }
        }
        valid.sort_unstable();
        for (a, &u) in valid.iter().enumerate() {
            for &v in &valid[a + 1..] {
                if g.has_edge(u, v) {
                    owners.entry((u, v)).or_default().push(j);
                } else {
                    out.push(Violation::NotAClique { clique: j, u, v });
                }
            }
        }
    }
    for &(u, v) in g.edges() {
        match owners.get(&(u, v)) {
            None => out.push(Violation::Uncovered { u, v }),
            Some(js) if kind == CoverKind::Partition && js.len() > 1 => {
                out.push(Violation::Overcovered { u, v, cliques: js.clone() })
            }
            _ => {}
        }
    }
    out
}

/// Check `cliques` against `g` and return a typed cover, or every violation.
pub fn validate_cover(g: &Graph, cliques: &[Vec<usize>], kind: CoverKind) -> Result<CliqueCover> {
    let violations = cover_violations(g, cliques, kind);
    if !violations.is_empty() {
        let text: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        return Err(Error::InvalidCover(text.join("; ")));
    }
    let cliques = cliques
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect();
    Ok(CliqueCover {
        graph: g.clone(),
        cliques,
        kind,
        provenance: "user".into(),
    })
}

impl CliqueCover {
    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.cliques.len()
    }

    pub fn cliques(&self) -> &[Vec<usize>] {
        &self.cliques
    }

    pub fn kind(&self) -> CoverKind {
        self.kind
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Clique degrees `t_i`, indexed by vertex.
    pub fn clique_degrees(&self) -> Vec<usize> {
        let mut t = vec![0; self.n()];
        for c in &self.cliques {
            for &v in c {
                t[v] += 1;
            }
        }
        t
    }

    /// Clique degrees sorted non-increasingly (`t_1 ≥ … ≥ t_n`).
    pub fn t_sorted(&self) -> Vec<usize> {
        let mut t = self.clique_degrees();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Clique sizes `s_j`, indexed by clique.
    pub fn sizes(&self) -> Vec<usize> {
        self.cliques.iter().map(Vec::len).collect()
    }

    pub fn s_sorted(&self) -> Vec<usize> {
        let mut s = self.sizes();
        s.sort_unstable_by(|a, b| b.cmp(a));
        s
    }

    /// `P_G`: clique `j` adjacent to clique `l` when they share a vertex.
    pub fn partition_graph(&self) -> Graph {
        let sets: Vec<Vec<bool>> = self
            .cliques
            .iter()
            .map(|c| {
                let mut m = vec![false; self.n()];
                c.iter().for_each(|&v| m[v] = true);
                m
            })
            .collect();
        Graph::from_fn(self.k(), |a, b| self.cliques[b].iter().any(|&v| sets[a][v]))
    }

    pub fn to_file(&self) -> CoverFile {
        CoverFile {
            kind: self.kind,
            cliques: self.cliques.clone(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("cover serializes")
    }

    pub fn from_json(g: &Graph, text: &str) -> Result<CliqueCover> {
        let file: CoverFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Ok(validate_cover(g, &file.cliques, file.kind)?.with_provenance(file.provenance))
    }
}

pub fn clique_partition_graph(cover: &CliqueCover) -> Graph {
    cover.partition_graph()
}

/// Serialized cover: `{"kind": "partition", "cliques": [[0,1,2], …], "provenance": "…"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverFile {
    pub kind: CoverKind,
    pub cliques: Vec<Vec<usize>>,
    #[serde(default)]
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Regularity {
    /// `Some(t)` when every vertex lies in exactly `t` cliques.
    pub clique_regular: Option<usize>,
    /// `Some(s)` when every clique has `s` vertices.
    pub clique_uniform: Option<usize>,
    pub st_regular: Option<(usize, usize)>,
}

pub fn classify_regularity(cover: &CliqueCover) -> Regularity {
    fn constant(v: &[usize]) -> Option<usize> {
        match v.split_first() {
            Some((&x, rest)) if rest.iter().all(|&y| y == x) => Some(x),
            _ => None,
        }
    }
    let t = constant(&cover.clique_degrees());
    let s = constant(&cover.sizes());
    Regularity {
        clique_regular: t,
        clique_uniform: s,
        st_regular: s.zip(t),
    }
}
