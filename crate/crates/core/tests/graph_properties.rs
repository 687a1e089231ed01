mod common;

use common::{boolean_closure, brute_force_condition_l, counts_of, names};
use extgraph::{ladder_graph, DirectedMultigraph};
use proptest::prelude::*;

fn counts_strategy(max_vertices: usize, max_mult: usize) -> impl Strategy<Value = Vec<Vec<usize>>> {
    (1..=max_vertices)
        .prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(0..=max_mult, n), n))
}

/// Keeps total edge count at or below 16 by thinning the multiplicities.
fn cap_edges(mut counts: Vec<Vec<usize>>, cap: usize) -> Vec<Vec<usize>> {
    let mut total: usize = counts.iter().flatten().sum();
    'outer: for row in counts.iter_mut() {
        for c in row.iter_mut() {
            if total <= cap {
                break 'outer;
            }
            let cut = (*c).min(total - cap);
            *c -= cut;
            total -= cut;
        }
    }
    counts
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn incidence_products(counts in counts_strategy(6, 3)) {
        let g = DirectedMultigraph::from_counts(names(counts.len()), &counts).unwrap();
        let (s, r) = (g.source_matrix(), g.range_matrix());
        prop_assert_eq!(&s * &r, g.vertex_matrix());
        prop_assert_eq!(&r * &s, g.edge_matrix());
    }

    #[test]
    fn edge_matrix_matches_pairwise_definition(counts in counts_strategy(5, 2)) {
        let g = DirectedMultigraph::from_counts(names(counts.len()), &counts).unwrap();
        let b = g.edge_matrix();
        for (i, e) in g.edges().iter().enumerate() {
            for (j, f) in g.edges().iter().enumerate() {
                let expected = if e.range == f.source { 1 } else { 0 };
                prop_assert_eq!(b[(i, j)].clone(), expected.into());
            }
        }
    }

    #[test]
    fn row_sums_are_out_degrees(counts in counts_strategy(6, 3)) {
        let g = DirectedMultigraph::from_counts(names(counts.len()), &counts).unwrap();
        let a = g.vertex_matrix();
        let sinks = g.sinks();
        for v in 0..g.vertex_count() {
            let sum: num_bigint::BigInt = a.row(v).iter().sum();
            prop_assert_eq!(sum, g.out_edges(v).len().into());
            prop_assert_eq!(a.row(v).iter().all(|x| *x == 0.into()), sinks.contains(&g.vertices()[v].as_str()));
        }
    }

    #[test]
    fn reachability_matches_boolean_closure(counts in counts_strategy(8, 1)) {
        let g = DirectedMultigraph::from_counts(names(counts.len()), &counts).unwrap();
        let closure = boolean_closure(&counts);
        for (i, v) in g.vertices().iter().enumerate() {
            for (j, w) in g.vertices().iter().enumerate() {
                prop_assert_eq!(g.reaches_strict(v, w).unwrap(), closure[i][j]);
                prop_assert_eq!(g.reaches(v, w).unwrap(), i == j || closure[i][j]);
            }
        }
    }

    #[test]
    fn condition_l_matches_cycle_enumeration(counts in counts_strategy(8, 2)) {
        let counts = cap_edges(counts, 16);
        let g = DirectedMultigraph::from_counts(names(counts.len()), &counts).unwrap();
        prop_assert_eq!(g.satisfies_condition_l(), brute_force_condition_l(&counts));
    }

    #[test]
    fn transitivity_matches_closure(counts in counts_strategy(6, 1)) {
        let g = DirectedMultigraph::from_counts(names(counts.len()), &counts).unwrap();
        let closure = boolean_closure(&counts);
        let n = counts.len();
        let expected = (0..n).all(|i| (0..n).all(|j| i == j || closure[i][j]));
        prop_assert_eq!(g.is_transitive(), expected);
    }
}

#[test]
fn ladder_truncations_satisfy_hypotheses() {
    for m in 2..=10 {
        let g = ladder_graph(m).unwrap();
        let counts = counts_of(&g);
        assert!(g.satisfies_condition_l(), "m = {m}");
        assert!(brute_force_condition_l(&counts), "m = {m}");
        assert!(g.sinks().is_empty(), "m = {m}");
        assert!(g.is_transitive(), "m = {m}");
        let closure = boolean_closure(&counts);
        assert!(closure.iter().flatten().all(|&r| r), "m = {m}");
    }
}
