//! Small-graph isomorphism: canonical forms, automorphism counts, exhaustive
//! enumeration of isomorphism classes, and subgraph embedding.

use std::collections::BTreeMap;

use super::Graph;
use crate::error::{Error, Result};

pub const CANONICAL_LIMIT: usize = 16;
pub const ENUMERATION_MAX_N: usize = 8;
pub const ENUMERATION_MAX_M: usize = 8;
pub const SUBGRAPH_LIMIT: usize = 10;

/// Minimum upper-triangle bit string (column order, first bit most
/// significant) over all vertex orders compatible with color refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u128,
}

impl CanonicalForm {
    pub fn to_graph(&self) -> Graph {
        let n = self.n;
        let total = n * n.saturating_sub(1) / 2;
        let mut edges = Vec::new();
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                if self.bits >> (total - 1 - k) & 1 == 1 {
                    edges.push((i, j));
                }
                k += 1;
            }
        }
        Graph::from_edges(n, &edges).expect("canonical bits describe a simple graph")
    }
}

#[derive(Debug, Clone)]
pub struct Canonical {
    pub form: CanonicalForm,
    /// `order[p]` is the original vertex placed at canonical position `p`.
    pub order: Vec<usize>,
    pub automorphisms: u64,
}

/// Stable color refinement; colors are ranks of label-invariant signatures.
fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut color: Vec<usize> = g.degrees();
    let mut classes = usize::MAX;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).map(|u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sigs
            .iter()
            .map(|s| distinct.binary_search(s).expect("signature present"))
            .collect();
        if distinct.len() == classes {
            return next;
        }
        classes = distinct.len();
        color = next;
    }
}

struct Search<'a> {
    g: &'a Graph,
    total: usize,
    color: Vec<usize>,
    slot: Vec<usize>,
    order: Vec<usize>,
    used: Vec<bool>,
    best: Option<(u128, Vec<usize>)>,
    ties: u64,
}

impl Search<'_> {
    fn go(&mut self, p: usize, key: u128, bits_done: usize) {
        let n = self.g.n();
        if let Some((best, _)) = &self.best {
            let prefix = if bits_done == 0 { 0 } else { best >> (self.total - bits_done) };
            if key > prefix {
                return;
            }
        }
        if p == n {
            match &self.best {
                Some((best, _)) if key == *best => self.ties += 1,
                _ => {
                    self.best = Some((key, self.order.clone()));
                    self.ties = 1;
                }
            }
            return;
        }
        for v in 0..n {
            if self.used[v] || self.color[v] != self.slot[p] {
                continue;
            }
            let mut k = key;
            for i in 0..p {
                k = (k << 1) | self.g.has_edge(self.order[i], v) as u128;
            }
            self.used[v] = true;
            self.order.push(v);
            self.go(p + 1, k, bits_done + p);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

pub fn canonical(g: &Graph) -> Result<Canonical> {
    let n = g.n();
    if n > CANONICAL_LIMIT {
        return Err(Error::SizeGuard {
            what: "canonical form vertex count",
            got: n,
            limit: CANONICAL_LIMIT,
        });
    }
    let color = refine(g);
    let mut slot = color.clone();
    slot.sort_unstable();
    let mut s = Search {
        g,
        total: n * n.saturating_sub(1) / 2,
        color,
        slot,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        best: None,
        ties: 0,
    };
    s.go(0, 0, 0);
    let (bits, order) = s.best.expect("at least one vertex order exists");
    Ok(Canonical {
        form: CanonicalForm { n, bits },
        order,
        automorphisms: s.ties,
    })
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    Ok(canonical(g)?.form)
}

pub fn automorphism_count(g: &Graph) -> Result<u64> {
    Ok(canonical(g)?.automorphisms)
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.n() != b.n() || a.m() != b.m() || a.degree_sequence() != b.degree_sequence() {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// One representative per isomorphism class of graphs with `n` vertices and
/// `m` edges, each given in canonical labeling, sorted by canonical form.
pub fn enumerate_graphs(n: usize, m: usize) -> Result<Vec<Graph>> {
    if n > ENUMERATION_MAX_N {
        return Err(Error::SizeGuard {
            what: "enumeration vertex count",
            got: n,
            limit: ENUMERATION_MAX_N,
        });
    }
    if m > ENUMERATION_MAX_M {
        return Err(Error::SizeGuard {
            what: "enumeration edge count",
            got: m,
            limit: ENUMERATION_MAX_M,
        });
    }
    if m > n * n.saturating_sub(1) / 2 {
        return Ok(Vec::new());
    }
    let mut level: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    let empty = Graph::empty(n);
    level.insert(canonical_form(&empty)?, empty);
    for _ in 0..m {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for j in 1..n {
                for i in 0..j {
                    if g.has_edge(i, j) {
                        continue;
                    }
                    let mut edges = g.edges().to_vec();
                    edges.push((i, j));
                    let h = Graph::from_edges(n, &edges)?;
                    let form = canonical_form(&h)?;
                    next.entry(form).or_insert_with(|| form.to_graph());
                }
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// Injection `f` of `V(h)` into `V(g)` with `uv ∈ E(h) ⇒ f(u)f(v) ∈ E(g)`.
pub fn is_subgraph_up_to_iso(h: &Graph, g: &Graph) -> Result<Option<Vec<usize>>> {
    if g.n() > SUBGRAPH_LIMIT {
        return Err(Error::SizeGuard {
            what: "subgraph host vertex count",
            got: g.n(),
            limit: SUBGRAPH_LIMIT,
        });
    }
    if h.n() > g.n() {
        return Err(Error::InvalidParameters(format!(
            "pattern has {} vertices, host only {}",
            h.n(),
            g.n()
        )));
    }
    if h.m() > g.m() {
        return Ok(None);
    }
    // place high-degree vertices of h first
    let mut seq: Vec<usize> = (0..h.n()).collect();
    seq.sort_by_key(|&v| std::cmp::Reverse(h.degree(v)));
    let mut map = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    if embed(h, g, &seq, 0, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

fn embed(h: &Graph, g: &Graph, seq: &[usize], idx: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&v) = seq.get(idx) else {
        return true;
    };
    for w in 0..g.n() {
        if used[w] || g.degree(w) < h.degree(v) {
            continue;
        }
        let ok = seq[..idx]
            .iter()
            .all(|&u| !h.has_edge(u, v) || g.has_edge(map[u], w));
        if !ok {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if embed(h, g, seq, idx + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{seq::SliceRandom, Rng, SeedableRng};

    fn binomial(n: u128, k: u128) -> u128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn factorial(n: u128) -> u128 {
        (1..=n).product()
    }

    #[test]
    fn known_class_counts() {
        assert_eq!(enumerate_graphs(7, 4).unwrap().len(), 10);
        assert_eq!(enumerate_graphs(8, 5).unwrap().len(), 24);
        let k3 = enumerate_graphs(3, 3).unwrap();
        assert_eq!(k3, vec![Graph::complete(3).unwrap()]);
    }

    #[test]
    fn orbit_counting_recovers_labeled_totals() {
        for n in 1..=7usize {
            let pairs = (n * (n - 1) / 2) as u128;
            for m in 0..=(pairs as usize).min(ENUMERATION_MAX_M) {
                let classes = enumerate_graphs(n, m).unwrap();
                let total: u128 = classes
                    .iter()
                    .map(|g| factorial(n as u128) / automorphism_count(g).unwrap() as u128)
                    .sum();
                assert_eq!(total, binomial(pairs, m as u128), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn orbit_counting_at_eight_vertices() {
        for m in [3, 5] {
            let total: u128 = enumerate_graphs(8, m)
                .unwrap()
                .iter()
                .map(|g| 40320 / automorphism_count(g).unwrap() as u128)
                .sum();
            assert_eq!(total, binomial(28, m as u128));
        }
    }

    #[test]
    fn enumeration_has_no_isomorphic_pair() {
        let list = enumerate_graphs(8, 5).unwrap();
        for (i, a) in list.iter().enumerate() {
            assert_eq!(a.m(), 5);
            for b in &list[i + 1..] {
                assert!(!is_isomorphic(a, b).unwrap());
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&Graph::complete(5).unwrap()).unwrap(), 120);
        assert_eq!(automorphism_count(&Graph::cycle(6).unwrap()).unwrap(), 12);
        assert_eq!(automorphism_count(&Graph::path(4).unwrap()).unwrap(), 2);
        assert_eq!(automorphism_count(&Graph::star(4).unwrap()).unwrap(), 24);
        let k222 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(automorphism_count(&k222).unwrap(), 48);
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.random_range(1..10);
            let p: f64 = rng.random_range(0.1..0.9);
            let g = Graph::from_fn(n, |_, _| rng.random_bool(p));
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.relabel(&perm);
            let cg = canonical(&g).unwrap();
            assert_eq!(cg.form, canonical_form(&h).unwrap());
            assert_eq!(cg.form.to_graph(), g.relabel(&inverse(&cg.order)));
        }
    }

    fn inverse(order: &[usize]) -> Vec<usize> {
        let mut inv = vec![0; order.len()];
        for (p, &v) in order.iter().enumerate() {
            inv[v] = p;
        }
        inv
    }

    #[test]
    fn non_isomorphic_pairs_are_separated() {
        // same degree sequence, different graphs
        let c6 = Graph::cycle(6).unwrap();
        let two_c3 = Graph::cycle(3).unwrap().disjoint_union(&Graph::cycle(3).unwrap());
        assert!(!is_isomorphic(&c6, &two_c3).unwrap());
        let prism = Graph::complete(3).unwrap().cartesian_product(&Graph::complete(2).unwrap());
        let k33 = Graph::complete_bipartite(3, 3).unwrap();
        assert!(!is_isomorphic(&prism, &k33).unwrap());
    }

    #[test]
    fn guards() {
        assert!(matches!(enumerate_graphs(9, 3), Err(Error::SizeGuard { .. })));
        assert!(matches!(enumerate_graphs(8, 9), Err(Error::SizeGuard { .. })));
        assert!(matches!(canonical_form(&Graph::empty(17)), Err(Error::SizeGuard { .. })));
        let big = Graph::empty(11);
        assert!(matches!(
            is_subgraph_up_to_iso(&Graph::empty(2), &big),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn subgraph_examples() {
        for n in [6, 8, 10] {
            let h = n / 2;
            let left: Vec<usize> = (0..h).collect();
            let right: Vec<usize> = (h..n).collect();
            let host = Graph::complete_bipartite(h, h)
                .unwrap()
                .remove_perfect_matching(&left, &right)
                .unwrap();
            let cyc = Graph::cycle(n).unwrap();
            let f = is_subgraph_up_to_iso(&cyc, &host).unwrap().expect("cycle embeds");
            for &(u, v) in cyc.edges() {
                assert!(host.has_edge(f[u], f[v]));
            }
        }
        let c5 = Graph::cycle(5).unwrap();
        assert!(is_subgraph_up_to_iso(&Graph::complete(3).unwrap(), &c5).unwrap().is_none());
        let k3 = Graph::complete(3).unwrap();
        assert!(is_subgraph_up_to_iso(&Graph::path(3).unwrap(), &k3).unwrap().is_some());
    }

    #[test]
    fn subgraph_matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..150 {
            let n = rng.random_range(2..7);
            let g = Graph::from_fn(n, |_, _| rng.random_bool(0.5));
            let k = rng.random_range(1..=n);
            let h = Graph::from_fn(k, |_, _| rng.random_bool(0.4));
            let brute = permutations(n).iter().any(|p| {
                h.edges().iter().all(|&(u, v)| g.has_edge(p[u], p[v]))
            });
            assert_eq!(is_subgraph_up_to_iso(&h, &g).unwrap().is_some(), brute);
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
}
