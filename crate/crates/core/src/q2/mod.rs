//! Two-eigenvalue realizations `A = MMᵀ` with `MᵀM = cI_k`.

mod conjecture;
mod constructions;
mod gram;
mod search;

pub use conjecture::{verify_conjecture, CaseReport, ConjectureReport};
pub use constructions::{
    construct_complete, construct_fixed, construct_prism, construct_prism_join, printed_pattern, FixedName, FIXED_NAMES,
};
pub use gram::{gram_complete, GramTarget};
pub use search::{numeric_q2_search, SearchOutcome, SearchTrace};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::io::{from_graph6, to_graph6};
use crate::graph::Graph;
use crate::linalg::{pattern_of, sym_eigen, Matrix};
use crate::ssp::{check_ssp_with_pattern, SspResult};
use crate::tolerances::Tolerances;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Provenance {
    PrintedConstruction { name: String },
    GramCompletion { base: String, seed: u64 },
    NumericSearch {
        seed: u64,
        k: usize,
        iterations: usize,
        /// Construction whose matrix started the iteration, if any.
        seeded_from: Option<String>,
    },
}

impl Provenance {
    pub fn label(&self) -> String {
        match self {
            Provenance::PrintedConstruction { name } => name.clone(),
            Provenance::GramCompletion { base, seed } => format!("gram-completion({base}, seed={seed})"),
            Provenance::NumericSearch { seed, k, seeded_from: Some(from), .. } => {
                format!("numeric-search(k={k}, seed={seed}, from {from})")
            }
            Provenance::NumericSearch { seed, k, seeded_from: None, .. } => format!("numeric-search(k={k}, seed={seed})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Q2Certificate {
    pub target: Graph,
    pub target_graph6: String,
    pub m: Matrix,
    /// Printed entries as expression strings, for matrices taken verbatim.
    pub exact_entries: Option<Vec<Vec<String>>>,
    pub c: f64,
    pub spectrum_clusters: Vec<(f64, usize)>,
    pub gram_residual: f64,
    pub ssp: SspResult,
    pub status: Status,
    pub provenance: Provenance,
    pub tolerances: Tolerances,
}

impl Q2Certificate {
    /// Build and verify. `target` is the graph the matrix is claimed to realize.
    pub fn new(target: Graph, m: Matrix, provenance: Provenance, tol: &Tolerances) -> Result<Q2Certificate> {
        if m.rows() != target.n() {
            return Err(Error::Dimension(format!("M has {} rows, target has {} vertices", m.rows(), target.n())));
        }
        let k = m.cols();
        let gram = m.gram_cols();
        let c = if k == 0 { 0.0 } else { gram.trace() / k as f64 };
        let gram_residual = gram.sub(&Matrix::identity(k).scale(c)).max_abs();
        let a = m.gram_rows();
        let spectrum_clusters = sym_eigen(&a)?.clusters().iter().map(|c| (c.value, c.multiplicity)).collect();
        let ssp = check_ssp_with_pattern(&a, &target, tol)?;
        let mut cert = Q2Certificate {
            target_graph6: to_graph6(&target),
            target,
            m,
            exact_entries: None,
            c,
            spectrum_clusters,
            gram_residual,
            ssp,
            status: Status::Verified,
            provenance,
            tolerances: *tol,
        };
        cert.status = match cert.first_violation(tol) {
            None => Status::Verified,
            Some(v) => Status::Failed(v),
        };
        Ok(cert)
    }

    pub fn with_exact_entries(mut self, entries: Vec<Vec<String>>) -> Self {
        self.exact_entries = Some(entries);
        self
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn k(&self) -> usize {
        self.m.cols()
    }

    pub fn matrix(&self) -> Matrix {
        self.m.gram_rows()
    }

    /// Recompute every invariant from `M` and the target alone.
    pub fn first_violation(&self, tol: &Tolerances) -> Option<String> {
        let (n, k) = (self.n(), self.k());
        if k == 0 || k >= n.max(1) {
            return Some(format!("k = {k} columns for n = {n} rows; need 1 ≤ k ≤ n − 1"));
        }
        let gram = self.m.gram_cols();
        let c = gram.trace() / k as f64;
        if c <= 0.0 {
            return Some(format!("MᵀM has trace {}", gram.trace()));
        }
        let residual = gram.sub(&Matrix::identity(k).scale(c)).max_abs();
        if residual > tol.gram * (1.0 + c) {
            return Some(format!("‖MᵀM − cI‖_max = {residual:.3e} exceeds {:.1e}", tol.gram * (1.0 + c)));
        }
        let a = self.m.gram_rows();
        let pattern = pattern_of(&a, Some(tol.zero_pattern * (1.0 + a.max_abs())));
        if pattern != self.target {
            let extra: Vec<_> = pattern.edges().iter().filter(|&&(u, v)| !self.target.has_edge(u, v)).collect();
            let missing: Vec<_> = self.target.edges().iter().filter(|&&(u, v)| !pattern.has_edge(u, v)).collect();
            return Some(format!("pattern of MMᵀ differs from target: extra {extra:?}, missing {missing:?}"));
        }
        let spec = match sym_eigen(&a) {
            Ok(s) => s,
            Err(e) => return Some(format!("eigensolver: {e}")),
        };
        let clusters = spec.clusters();
        if clusters.len() != 2 {
            return Some(format!("MMᵀ has {} distinct eigenvalues", clusters.len()));
        }
        let (hi, lo) = (&clusters[0], &clusters[1]);
        let scale = 1.0 + c;
        if hi.multiplicity != k || (hi.value - c).abs() > tol.equality * scale {
            return Some(format!("top cluster {}^[{}], expected {c}^[{k}]", hi.value, hi.multiplicity));
        }
        if lo.multiplicity != n - k || lo.value.abs() > tol.equality * scale {
            return Some(format!("bottom cluster {}^[{}], expected 0^[{}]", lo.value, lo.multiplicity, n - k));
        }
        None
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Q2Certificate> {
        let cert: Q2Certificate =
            serde_json::from_str(text).map_err(|e| Error::Parse { line: e.line(), message: e.to_string() })?;
        let g = from_graph6(&cert.target_graph6)?;
        if g != cert.target {
            return Err(Error::Verification("graph6 string disagrees with the target edge list".into()));
        }
        Ok(cert)
    }

    /// Parse, then re-derive the verdict from the stored matrix.
    pub fn revalidate(text: &str) -> Result<Q2Certificate> {
        let cert = Q2Certificate::from_json(text)?;
        let fresh = Q2Certificate::new(cert.target.clone(), cert.m.clone(), cert.provenance.clone(), &cert.tolerances)?;
        if fresh.status != cert.status {
            return Err(Error::Verification(format!(
                "stored status {:?} but recomputed {:?}",
                cert.status, fresh.status
            )));
        }
        Ok(Q2Certificate { exact_entries: cert.exact_entries, ..fresh })
    }

    /// Same realization with vertices renamed: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize], tol: &Tolerances) -> Result<Q2Certificate> {
        let mut inverse = vec![0; perm.len()];
        for (v, &p) in perm.iter().enumerate() {
            inverse[p] = v;
        }
        let m = self.m.select_rows(&inverse);
        let mut cert = Q2Certificate::new(self.target.relabel(perm), m, self.provenance.clone(), tol)?;
        cert.exact_entries = self
            .exact_entries
            .as_ref()
            .map(|rows| inverse.iter().map(|&i| rows[i].clone()).collect());
        Ok(cert)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_rank_one() {
        let tol = Tolerances::default();
        let cert = construct_complete(5, &tol).unwrap();
        assert!(cert.is_verified(), "{:?}", cert.status);
        assert!((cert.c - 1.0).abs() < 1e-12);
        let a = cert.matrix();
        assert!(a.sub(&Matrix::ones(5, 5).scale(0.2)).max_abs() < 1e-12);
    }

    #[test]
    fn wrong_target_is_reported() {
        let tol = Tolerances::default();
        let m = Matrix::ones(4, 1);
        let cert = Q2Certificate::new(Graph::cycle(4).unwrap(), m, Provenance::PrintedConstruction { name: "x".into() }, &tol)
            .unwrap();
        match &cert.status {
            Status::Failed(r) => assert!(r.contains("pattern")),
            s => panic!("{s:?}"),
        }
    }

    #[test]
    fn gram_failure_is_reported() {
        let tol = Tolerances::default();
        let m = Matrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let g = pattern_of(&m.gram_rows(), None);
        let cert = Q2Certificate::new(g, m, Provenance::PrintedConstruction { name: "x".into() }, &tol).unwrap();
        assert!(matches!(&cert.status, Status::Failed(r) if r.contains("MᵀM")));
    }

    #[test]
    fn json_round_trip_revalidates() {
        let tol = Tolerances::default();
        let cert = construct_prism(4, &tol).unwrap();
        let back = Q2Certificate::revalidate(&cert.to_json()).unwrap();
        assert!(back.is_verified());
        assert_eq!(back.m, cert.m);
        assert_eq!(back.exact_entries, cert.exact_entries);
        let tampered = cert.to_json().replacen("\"status\": \"verified\"", "\"status\": {\"failed\": \"x\"}", 1);
        assert!(Q2Certificate::revalidate(&tampered).is_err());
    }

    #[test]
    fn relabel_keeps_verification() {
        let tol = Tolerances::default();
        let cert = construct_prism_join(3, &tol).unwrap();
        let perm = vec![8, 7, 6, 5, 4, 3, 2, 1, 0];
        let moved = cert.relabel(&perm, &tol).unwrap();
        assert!(moved.is_verified());
        assert_eq!(moved.target, cert.target.relabel(&perm));
        assert_eq!(moved.exact_entries.as_ref().unwrap()[8], cert.exact_entries.as_ref().unwrap()[0]);
    }
}
