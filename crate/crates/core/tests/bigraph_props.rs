mod common;

use biramsey::{BicliqueShape, BipartiteGraph};
use common::*;
use proptest::prelude::*;

fn check_witness(g: &BipartiteGraph, shape: BicliqueShape) {
    if let Some(b) = g.contains_biclique(shape) {
        assert_eq!(b.row_set.len(), shape.s);
        assert_eq!(b.col_set.len(), shape.t);
        assert!(b.is_in(g));
    }
}

#[test]
fn exhaustive_agreement_with_oracle() {
    for (m, n) in small_hosts(16) {
        if m > 5 || n > 5 {
            continue;
        }
        for code in 0u64..1 << (m * n) {
            let rows = rows_of(code, m, n);
            let g = to_graph(&rows, n);
            for (s, t) in [(2, 2), (3, 3)] {
                let found = g.contains_biclique(sh(s, t));
                assert_eq!(
                    found.is_some(),
                    has_biclique(&rows, s, t),
                    "{m}x{n} code {code} K_{s},{t}"
                );
                check_witness(&g, sh(s, t));
            }
        }
    }
}

fn graph_strategy(max_m: usize, max_n: usize) -> impl Strategy<Value = (usize, Vec<u64>)> {
    (1..=max_m, 1..=max_n)
        .prop_flat_map(|(m, n)| (Just(n), proptest::collection::vec(0u64..(1u64 << n), m)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn random_agreement_with_oracle((n, rows) in graph_strategy(5, 5), s in 1usize..=3, t in 1usize..=3) {
        let g = to_graph(&rows, n);
        prop_assert_eq!(g.contains_biclique(sh(s, t)).is_some(), has_biclique(&rows, s, t));
        check_witness(&g, sh(s, t));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn wide_agreement_with_oracle((n, rows) in graph_strategy(6, 40), s in 1usize..=4, t in 1usize..=4) {
        let g = to_graph(&rows, n);
        prop_assert_eq!(g.contains_biclique(sh(s, t)).is_some(), has_biclique(&rows, s, t));
        check_witness(&g, sh(s, t));
    }

    #[test]
    fn supergraphs_keep_bicliques((n, rows) in graph_strategy(6, 8), extra in proptest::collection::vec(any::<u64>(), 6)) {
        let g = to_graph(&rows, n);
        let bigger: Vec<u64> = rows.iter().zip(&extra).map(|(r, e)| (r | e) & ((1u64 << n) - 1)).collect();
        let h = to_graph(&bigger, n);
        prop_assert!(g.is_subgraph_of(&h));
        for (s, t) in [(2, 2), (3, 3), (2, 3)] {
            if g.contains_biclique(sh(s, t)).is_some() {
                prop_assert!(h.contains_biclique(sh(s, t)).is_some());
            }
        }
    }

    #[test]
    fn degree_and_edge_consistency((n, rows) in graph_strategy(8, 30)) {
        let g = to_graph(&rows, n);
        let by_rows: usize = g.row_degrees().iter().sum();
        let by_cols: usize = g.col_degrees().iter().sum();
        prop_assert_eq!(g.edge_count(), edges(&rows));
        prop_assert_eq!(by_rows, g.edge_count());
        prop_assert_eq!(by_cols, g.edge_count());
        prop_assert_eq!(g.transpose().row_degrees(), g.col_degrees());
        prop_assert_eq!(g.max_degree_x(), g.row_degrees().into_iter().max().unwrap_or(0));
    }

    #[test]
    fn complement_is_an_involution((n, rows) in graph_strategy(8, 30)) {
        let g = to_graph(&rows, n);
        let c = g.complement();
        prop_assert_eq!(c.edge_count(), g.m() * n - g.edge_count());
        prop_assert_eq!(c.complement(), g.clone());
        prop_assert_eq!(from_graph(&c), complement(&rows, n));
    }

    #[test]
    fn text_formats_round_trip((n, rows) in graph_strategy(8, 30)) {
        let g = to_graph(&rows, n);
        prop_assert_eq!(BipartiteGraph::parse_matrix(&g.to_matrix_text()).unwrap(), g.clone());
        prop_assert_eq!(BipartiteGraph::parse_neighbor_lists(&g.to_neighbor_list_text()).unwrap(), g);
    }

    #[test]
    fn common_neighborhood_is_intersection((n, rows) in graph_strategy(8, 30), pick in any::<u8>()) {
        let g = to_graph(&rows, n);
        let chosen: Vec<usize> = (0..g.m()).filter(|i| pick >> i & 1 == 1).collect();
        let expected = chosen.iter().fold((1u64 << n) - 1, |acc, &i| acc & rows[i]);
        let got = g.common_neighborhood(chosen.iter().copied());
        prop_assert_eq!(got.iter().fold(0u64, |acc, j| acc | 1 << j), expected);
    }
}
