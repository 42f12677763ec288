use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cliquespec::clique::{
    clique_signless_laplacian, edge_partition, greedy_clique_partition, incidence, CliqueCover, IncidenceMode,
};
use cliquespec::graph::Graph;
use cliquespec::linalg::rational::RatMatrix;
use cliquespec::linalg::Matrix;
use cliquespec::q2::{construct_prism, construct_prism_join, Q2Certificate};
use cliquespec::spectral::{bound_suite, eigenvalues, spectral_report};
use cliquespec::ssp::check_ssp;
use cliquespec::Tolerances;

fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Graph::from_fn(n, |_, _| rng.random_bool(p))
}

fn arb_graph() -> impl Strategy<Value = Graph> {
    (1usize..=9, 0.05f64..0.95, any::<u64>()).prop_map(|(n, p, seed)| gnp(n, p, seed))
}

fn both_partitions(g: &Graph, seed: u64) -> [CliqueCover; 2] {
    [edge_partition(g), greedy_clique_partition(g, seed).unwrap()]
}

fn nonzero_sorted(values: &[f64]) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| x.abs() > 1e-8).collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clique_degree_sums_and_domination(g in arb_graph(), seed in any::<u64>()) {
        for f in both_partitions(&g, seed) {
            let t = f.clique_degrees();
            let sizes = f.sizes();
            prop_assert_eq!(t.iter().sum::<usize>(), sizes.iter().sum::<usize>());
            prop_assert_eq!(t.iter().sum::<usize>(), f.cliques().iter().map(Vec::len).sum::<usize>());
            let d = g.degree_sequence();
            for (ti, di) in f.t_sorted().iter().zip(&d) {
                prop_assert!(ti <= di);
            }
        }
    }

    #[test]
    fn qf_and_rf_share_nonzero_spectrum(g in arb_graph(), seed in any::<u64>()) {
        let tol = Tolerances::default();
        for f in both_partitions(&g, seed) {
            let inc = incidence(&f, IncidenceMode::Binary, None).unwrap();
            let (q, r) = clique_signless_laplacian(&inc);
            let a = nonzero_sorted(&eigenvalues(&q, &tol).unwrap());
            let b = nonzero_sorted(&eigenvalues(&r, &tol).unwrap());
            prop_assert_eq!(a.len(), b.len());
            for (x, y) in a.iter().zip(&b) {
                prop_assert!((x - y).abs() < 1e-8, "{} vs {}", x, y);
            }
        }
    }

    #[test]
    fn energy_of_qf_two_ways(g in arb_graph(), seed in any::<u64>()) {
        let tol = Tolerances::default();
        for f in both_partitions(&g, seed) {
            let r = spectral_report(&g, &f, &tol).unwrap();
            // mean deviation against the max over index sets
            let t_bar = r.t_bar;
            let dev: f64 = r.q_f_spectrum.iter().map(|x| (x - t_bar).abs()).sum();
            let best = (0..=r.n)
                .map(|j| 2.0 * r.q_f_spectrum[..j].iter().map(|x| x - t_bar).sum::<f64>())
                .fold(f64::NEG_INFINITY, f64::max);
            prop_assert!((dev - r.energies.q_f).abs() < 1e-8);
            prop_assert!((dev - best).abs() < 1e-8, "{} vs {}", dev, best);
        }
    }

    #[test]
    fn edge_partition_rf_energy_is_line_energy(g in arb_graph()) {
        let tol = Tolerances::default();
        let r = spectral_report(&g, &edge_partition(&g), &tol).unwrap();
        prop_assert!((r.energies.r_f - r.energies.line_graph).abs() < 1e-7 * (1.0 + r.energies.line_graph));
    }

    #[test]
    fn ssp_kernel_matches_rational_nullity(n in 2usize..6, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut a = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = if rng.random_bool(0.4) { 0.0 } else { rng.random_range(-2i32..=2) as f64 };
                a[(i, j)] = v;
                a[(j, i)] = v;
            }
        }
        let tol = Tolerances::default();
        let res = check_ssp(&a, &tol).unwrap();
        prop_assert!(RatMatrix::from_integral(&a).is_some());
        prop_assert_eq!(res.exact_kernel_dimension, Some(res.kernel_dimension));
        // the zero matrix is always in the kernel, so the dimension is bounded by the free variables
        prop_assert!(res.kernel_dimension <= res.free_variables);
        prop_assert_eq!(res.has_ssp, res.kernel_dimension == 0);
    }

    #[test]
    fn ssp_permutation_invariant(n in 2usize..7, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gnp(n, 0.6, seed);
        let a = Matrix::from_fn(n, n, |i, j| if i == j { (i % 3) as f64 } else if g.has_edge(i, j) { 1.0 } else { 0.0 });
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let b = Matrix::from_fn(n, n, |i, j| a[(perm[i], perm[j])]);
        let tol = Tolerances::default();
        let (x, y) = (check_ssp(&a, &tol).unwrap(), check_ssp(&b, &tol).unwrap());
        prop_assert_eq!(x.kernel_dimension, y.kernel_dimension);
        prop_assert_eq!(x.has_ssp, y.has_ssp);
    }

    #[test]
    fn relabeled_certificates_round_trip(s in 3usize..6, join in any::<bool>(), seed in any::<u64>()) {
        let tol = Tolerances::default();
        let cert = if join { construct_prism_join(s, &tol).unwrap() } else { construct_prism(s, &tol).unwrap() };
        let n = cert.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let moved = cert.relabel(&perm, &tol).unwrap();
        let back = Q2Certificate::revalidate(&moved.to_json()).unwrap();
        prop_assert!(back.is_verified());
        let clusters: Vec<usize> = back.spectrum_clusters.iter().map(|c| c.1).collect();
        prop_assert_eq!(clusters, vec![cert.k(), n - cert.k()]);
        prop_assert!((back.spectrum_clusters[0].0 - cert.c).abs() < 1e-9 * (1.0 + cert.c));
    }
}

#[test]
fn bound_suite_on_thousand_seeded_graphs() {
    let tol = Tolerances::default();
    let mut seed = 0u64;
    for n in 4..=9 {
        for p in [0.2, 0.5, 0.8] {
            for _ in 0..56 {
                seed += 1;
                let g = gnp(n, p, seed);
                for f in both_partitions(&g, seed) {
                    for b in bound_suite(&g, &f, &tol).unwrap() {
                        assert!(!b.applicable || b.holds, "seed {seed} n={n} p={p}: {b:?}");
                    }
                }
            }
        }
    }
    assert!(seed >= 1000);
}

#[test]
fn regular_cover_equality_chain() {
    let tol = Tolerances::default();
    // edge partitions of regular graphs are (2, d)-regular; K222's triangles are (3, 2)-regular
    let mut cases: Vec<(Graph, CliqueCover)> = Vec::new();
    for g in [Graph::cycle(7).unwrap(), Graph::complete(5).unwrap(), Graph::complete_multipartite(&[3, 3]).unwrap()] {
        let f = edge_partition(&g);
        cases.push((g, f));
    }
    let k222 = Graph::complete_multipartite(&[2, 2, 2]).unwrap();
    let tri = cliquespec::clique::validate_cover(
        &k222,
        &[vec![0, 2, 4], vec![0, 3, 5], vec![1, 2, 5], vec![1, 3, 4]],
        cliquespec::clique::CoverKind::Partition,
    )
    .unwrap();
    cases.push((k222, tri));
    for (g, f) in cases {
        let t = f.clique_degrees()[0] as f64;
        let s = f.sizes()[0] as f64;
        let lam = eigenvalues(&g.adjacency_matrix(), &tol).unwrap();
        let pg = eigenvalues(&f.partition_graph().adjacency_matrix(), &tol).unwrap();
        for i in 0..g.n().min(f.k()) {
            assert!((lam[i] + t - pg[i] - s).abs() < 1e-8, "{:?} i={i}", g.edges());
        }
    }
}
