use super::Graph;
use crate::error::{Error, Result};

pub const INDEPENDENCE_LIMIT: usize = 40;

/// Exact independence number α(G): maximum clique of the complement by
/// branch and bound over bitsets.
pub fn independence_number(g: &Graph) -> Result<usize> {
    if g.n() > INDEPENDENCE_LIMIT {
        return Err(Error::SizeGuard {
            what: "independence number vertex count",
            got: g.n(),
            limit: INDEPENDENCE_LIMIT,
        });
    }
    let comp = g.complement();
    let nbr: Vec<u64> = (0..g.n()).map(|v| comp.neighbor_mask(v)).collect();
    let all = if g.n() == 64 { u64::MAX } else { (1u64 << g.n()) - 1 };
    let mut best = 0;
    expand(&nbr, 0, all, &mut best);
    Ok(best)
}

fn expand(nbr: &[u64], size: usize, mut cand: u64, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    while cand != 0 {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        let v = cand.trailing_zeros() as usize;
        cand &= !(1 << v);
        expand(nbr, size + 1, cand & nbr[v], best);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                g.edges()
                    .iter()
                    .all(|&(u, v)| !(mask >> u & 1 == 1 && mask >> v & 1 == 1))
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn known_values() {
        assert_eq!(independence_number(&Graph::complete(6).unwrap()).unwrap(), 1);
        assert_eq!(independence_number(&Graph::empty(7)).unwrap(), 7);
        assert_eq!(independence_number(&Graph::empty(0)).unwrap(), 0);
        let k222 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
        assert_eq!(independence_number(&k222).unwrap(), brute_force(&k222));
        assert_eq!(brute_force(&k222), 2);
        assert_eq!(independence_number(&Graph::cycle(7).unwrap()).unwrap(), 3);
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.random_range(1..12);
            let p: f64 = rng.random_range(0.1..0.9);
            let g = Graph::from_fn(n, |_, _| rng.random_bool(p));
            assert_eq!(independence_number(&g).unwrap(), brute_force(&g), "{g:?}");
        }
    }

    #[test]
    fn size_guard() {
        let big = Graph::empty(41);
        assert!(matches!(independence_number(&big), Err(Error::SizeGuard { .. })));
        assert_eq!(independence_number(&Graph::empty(40)).unwrap(), 40);
    }
}
