#![allow(clippy::needless_range_loop)]

mod common;

use common::{all_pairs_hops, brute_betweenness};
use proptest::prelude::*;
use thieves::centrality::{
    betweenness_centrality, closeness_centrality, clustering_coefficient, degree_centrality,
};
use thieves::generators::gen_ba_tf;
use thieves::Graph;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v, 1.0).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn permuted(g: &Graph, perm: &[usize]) -> Graph {
    let mut h = Graph::new(g.vertex_count());
    for (u, v, w) in g.edges() {
        h.add_edge(perm[u], perm[v], w).unwrap();
    }
    h
}

proptest! {
    #[test]
    fn brandes_matches_path_enumeration(g in arb_graph(9)) {
        let fast = betweenness_centrality(&g).scores;
        let slow = brute_betweenness(&g);
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).abs() <= 1e-9, "{:?} vs {:?}", fast, slow);
        }
    }

    #[test]
    fn measures_are_permutation_equivariant(
        (g, perm) in arb_graph(12).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let h = permuted(&g, &perm);
        type F = fn(&Graph) -> thieves::CentralityVector;
        let measures: [F; 4] = [degree_centrality, betweenness_centrality, closeness_centrality, clustering_coefficient];
        for f in measures {
            let a = f(&g).scores;
            let b = f(&h).scores;
            for v in 0..g.vertex_count() {
                prop_assert!((a[v] - b[perm[v]]).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn closeness_is_one_only_next_to_everyone(g in arb_graph(10)) {
        let n = g.vertex_count();
        let c = closeness_centrality(&g).scores;
        for v in 0..n {
            prop_assert!((0.0..=1.0 + 1e-12).contains(&c[v]));
            let hub = n > 1 && g.degree(v) == n - 1;
            prop_assert_eq!((c[v] - 1.0).abs() < 1e-12, hub, "vertex {}", v);
        }
    }

    #[test]
    fn connected_closeness_is_inverse_mean_distance(g in arb_graph(10)) {
        let n = g.vertex_count();
        prop_assume!(n > 1 && g.connected_components().len() == 1);
        let d = all_pairs_hops(&g);
        let c = closeness_centrality(&g).scores;
        for v in 0..n {
            let total: usize = d[v].iter().sum();
            prop_assert!((c[v] - (n - 1) as f64 / total as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn clustering_in_unit_interval(g in arb_graph(12)) {
        for (v, c) in clustering_coefficient(&g).scores.into_iter().enumerate() {
            prop_assert!((0.0..=1.0).contains(&c));
            if g.degree(v) < 2 {
                prop_assert_eq!(c, 0.0);
            }
        }
    }

    #[test]
    fn betweenness_sums_to_excess_path_length(g in arb_graph(10)) {
        // Σ_v B(v) = Σ_{s<t reachable} (d(s,t) - 1).
        let n = g.vertex_count();
        let d = all_pairs_hops(&g);
        let mut expected = 0.0;
        for s in 0..n {
            for t in s + 1..n {
                if d[s][t] != usize::MAX {
                    expected += (d[s][t] - 1) as f64;
                }
            }
        }
        let total: f64 = betweenness_centrality(&g).scores.iter().sum();
        prop_assert!((total - expected).abs() < 1e-9);
    }
}

#[test]
fn betweenness_is_bitwise_independent_of_thread_count() {
    let g = gen_ba_tf(700, 4, 0.3, 2).unwrap();
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let many = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap();
    let a = one.install(|| betweenness_centrality(&g).scores);
    let b = many.install(|| betweenness_centrality(&g).scores);
    assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
}
