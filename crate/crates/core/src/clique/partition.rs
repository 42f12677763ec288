use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{CliqueCover, CoverKind};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub const EXACT_PARTITION_LIMIT: usize = 12;
pub const ENUMERATE_PARTITION_LIMIT: usize = 9;
const GREEDY_LIMIT: usize = 64;

fn masks(g: &Graph) -> Vec<u64> {
    (0..g.n()).map(|v| g.neighbor_mask(v)).collect()
}

fn to_cover(g: &Graph, cliques: Vec<u64>, provenance: String) -> CliqueCover {
    let cliques = cliques
        .into_iter()
        .map(|c| (0..g.n()).filter(|&v| c >> v & 1 == 1).collect())
        .collect();
    CliqueCover {
        graph: g.clone(),
        cliques,
        kind: CoverKind::Partition,
        provenance,
    }
}

fn lowest_edge(uncov: &[u64]) -> Option<(usize, usize)> {
    uncov
        .iter()
        .enumerate()
        .find(|(u, &m)| m >> u >> 1 != 0)
        .map(|(u, &m)| (u, (m >> u >> 1).trailing_zeros() as usize + u + 1))
}

fn remove_clique(uncov: &mut [u64], c: u64) {
    let mut rest = c;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        uncov[v] &= !c;
    }
}

fn restore_clique(uncov: &mut [u64], c: u64) {
    let mut rest = c;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        uncov[v] |= c & !(1 << v);
    }
}

/// Every clique of the uncovered graph that contains the edge `uv`, larger
/// cliques first, ties in lexicographic order of the member sets.
fn cliques_through(uncov: &[u64], u: usize, v: usize) -> Vec<u64> {
    fn grow(uncov: &[u64], cur: u64, cand: u64, out: &mut Vec<u64>) {
        out.push(cur);
        let mut rest = cand;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(uncov, cur | 1 << w, rest & uncov[w], out);
        }
    }
    let mut out = Vec::new();
    grow(uncov, 1 << u | 1 << v, uncov[u] & uncov[v], &mut out);
    out.sort_by_key(|&c| (std::cmp::Reverse(c.count_ones()), members_key(c)));
    out
}

fn members_key(c: u64) -> Vec<u32> {
    let mut v = Vec::new();
    let mut rest = c;
    while rest != 0 {
        v.push(rest.trailing_zeros());
        rest &= rest - 1;
    }
    v
}

fn clique_number(adj: &[u64]) -> usize {
    fn expand(adj: &[u64], size: usize, mut cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            expand(adj, size + 1, cand & adj[v], best);
        }
    }
    let all = adj.iter().enumerate().fold(0u64, |m, (v, _)| m | 1 << v);
    let mut best = 0;
    expand(adj, 0, all, &mut best);
    best
}

fn edge_count(uncov: &[u64]) -> usize {
    uncov.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
}

/// Minimum clique partition by branch and bound.
///
/// The lowest uncovered edge is assigned to each clique of the still
/// uncovered graph that contains it, largest first; a branch is cut when
/// `chosen + ⌈remaining edges / C(ω, 2)⌉` cannot beat the incumbent, where
/// `ω` is the clique number of the uncovered graph. The greedy partition
/// seeds the incumbent.
pub fn min_clique_partition(g: &Graph) -> Result<CliqueCover> {
    if g.n() > EXACT_PARTITION_LIMIT {
        return Err(Error::SizeGuard {
            what: "exact clique partition vertex count",
            got: g.n(),
            limit: EXACT_PARTITION_LIMIT,
        });
    }
    let greedy = greedy_clique_partition(g, 0)?;
    let mut best: Vec<u64> = greedy
        .cliques()
        .iter()
        .map(|c| c.iter().fold(0u64, |m, &v| m | 1 << v))
        .collect();
    let mut uncov = masks(g);
    let mut chosen = Vec::new();
    branch(&mut uncov, &mut chosen, &mut best);
    Ok(to_cover(g, best, "exact".into()))
}

fn branch(uncov: &mut [u64], chosen: &mut Vec<u64>, best: &mut Vec<u64>) {
    let Some((u, v)) = lowest_edge(uncov) else {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    };
    let omega = clique_number(uncov).max(2);
    let per = omega * (omega - 1) / 2;
    if chosen.len() + edge_count(uncov).div_ceil(per) >= best.len() {
        return;
    }
    for c in cliques_through(uncov, u, v) {
        remove_clique(uncov, c);
        chosen.push(c);
        branch(uncov, chosen, best);
        chosen.pop();
        restore_clique(uncov, c);
    }
}

/// Seeded greedy partition: take the lowest uncovered edge and extend it to
/// a maximal clique of uncovered edges, scanning vertices in a seeded
/// random order. Not optimal in general.
pub fn greedy_clique_partition(g: &Graph, seed: u64) -> Result<CliqueCover> {
    if g.n() > GREEDY_LIMIT {
        return Err(Error::SizeGuard {
            what: "greedy clique partition vertex count",
            got: g.n(),
            limit: GREEDY_LIMIT,
        });
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut uncov = masks(g);
    let mut cliques = Vec::new();
    while let Some((u, v)) = lowest_edge(&uncov) {
        let mut c = 1u64 << u | 1 << v;
        let mut cand = uncov[u] & uncov[v];
        for &w in &order {
            if cand >> w & 1 == 1 {
                c |= 1 << w;
                cand &= uncov[w];
            }
        }
        remove_clique(&mut uncov, c);
        cliques.push(c);
    }
    Ok(to_cover(g, cliques, format!("greedy(seed={seed})")))
}

/// The partition `F = E`.
pub fn edge_partition(g: &Graph) -> CliqueCover {
    CliqueCover {
        graph: g.clone(),
        cliques: g.edges().iter().map(|&(u, v)| vec![u, v]).collect(),
        kind: CoverKind::Partition,
        provenance: "edges".into(),
    }
}

#[derive(Debug, Clone)]
pub struct PartitionEnumeration {
    pub partitions: Vec<CliqueCover>,
    /// False when `limit` stopped the enumeration early.
    pub complete: bool,
}

/// All clique partitions of `g`, up to `limit` of them. Each partition is
/// produced once: the clique holding the lowest uncovered edge is fixed at
/// each level.
pub fn enumerate_partitions(g: &Graph, limit: usize) -> Result<PartitionEnumeration> {
    if g.n() > ENUMERATE_PARTITION_LIMIT {
        return Err(Error::SizeGuard {
            what: "partition enumeration vertex count",
            got: g.n(),
            limit: ENUMERATE_PARTITION_LIMIT,
        });
    }
    let mut uncov = masks(g);
    let mut out = Vec::new();
    let complete = collect(&mut uncov, &mut Vec::new(), &mut out, limit);
    Ok(PartitionEnumeration {
        partitions: out
            .into_iter()
            .map(|c| to_cover(g, c, "enumerated".into()))
            .collect(),
        complete,
    })
}

fn collect(uncov: &mut [u64], chosen: &mut Vec<u64>, out: &mut Vec<Vec<u64>>, limit: usize) -> bool {
    let Some((u, v)) = lowest_edge(uncov) else {
        if out.len() >= limit {
            return false;
        }
        out.push(chosen.clone());
        return true;
    };
    for c in cliques_through(uncov, u, v) {
        remove_clique(uncov, c);
        chosen.push(c);
        let ok = collect(uncov, chosen, out, limit);
        chosen.pop();
        restore_clique(uncov, c);
        if !ok {
            return false;
        }
    }
    true
}
