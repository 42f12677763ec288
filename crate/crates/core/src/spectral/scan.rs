use serde::{Deserialize, Serialize};

use crate::clique::{enumerate_partitions, incidence, IncidenceMode};
use crate::error::Result;
use crate::graph::Graph;
use crate::linalg::rational::exact_rank_f64;

/// Best partition-dependent quantities over the clique partitions of a graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionScan {
    pub partitions_seen: usize,
    /// False when the limit cut the enumeration short; the minima are then
    /// only upper bounds on the true minima.
    pub complete: bool,
    pub min_t1: usize,
    pub min_t1_witness: Vec<Vec<usize>>,
    pub min_rank: usize,
    pub min_rank_witness: Vec<Vec<usize>>,
}

pub fn scan_partitions(g: &Graph, limit: usize) -> Result<PartitionScan> {
    let all = enumerate_partitions(g, limit)?;
    let mut best_t1: Option<(usize, Vec<Vec<usize>>)> = None;
    let mut best_rank: Option<(usize, Vec<Vec<usize>>)> = None;
    for p in &all.partitions {
        let t1 = p.t_sorted().first().copied().unwrap_or(0);
        if best_t1.as_ref().is_none_or(|b| t1 < b.0) {
            best_t1 = Some((t1, p.cliques().to_vec()));
        }
        let m = incidence(p, IncidenceMode::Binary, None)?.matrix;
        let rank = exact_rank_f64(&m).expect("binary incidence is integral");
        if best_rank.as_ref().is_none_or(|b| rank < b.0) {
            best_rank = Some((rank, p.cliques().to_vec()));
        }
    }
    let (min_t1, min_t1_witness) = best_t1.unwrap_or((0, Vec::new()));
    let (min_rank, min_rank_witness) = best_rank.unwrap_or((0, Vec::new()));
    Ok(PartitionScan {
        partitions_seen: all.partitions.len(),
        complete: all.complete,
        min_t1,
        min_t1_witness,
        min_rank,
        min_rank_witness,
    })
}
