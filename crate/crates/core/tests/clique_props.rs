//! Clique enumeration checked against the exhaustive subset oracle.

use cliquescope_core::cliques::bron_kerbosch;
use cliquescope_core::testing;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matches_subset_oracle(n in 1usize..12, p in 0.1f64..0.9, seed in 0u64..1000) {
        let g = testing::random_graph(n, p, seed);
        let found: Vec<Vec<usize>> = bron_kerbosch(&g, true)
            .cliques()
            .iter()
            .map(|c| c.members.clone())
            .collect();
        prop_assert_eq!(found, testing::brute_force_maximal_cliques(&g));
    }

    #[test]
    fn pivoting_only_changes_traversal(n in 1usize..14, p in 0.1f64..0.9, seed in 0u64..1000) {
        let g = testing::random_graph(n, p, seed);
        let with: Vec<_> = bron_kerbosch(&g, true).cliques().to_vec();
        let without: Vec<_> = bron_kerbosch(&g, false).cliques().to_vec();
        prop_assert_eq!(with, without);
    }

    #[test]
    fn cliques_are_complete_and_cover_all_nodes(n in 1usize..14, p in 0.1f64..0.9, seed in 0u64..1000) {
        let g = testing::random_graph(n, p, seed);
        let cs = bron_kerbosch(&g, true);
        let mut covered = vec![false; n];
        for clique in cs.cliques() {
            prop_assert!(!clique.members.is_empty());
            for (idx, &a) in clique.members.iter().enumerate() {
                covered[a] = true;
                for &b in &clique.members[idx + 1..] {
                    prop_assert!(g.has_edge(a, b), "clique pair {a}-{b} not adjacent");
                }
            }
        }
        prop_assert!(covered.into_iter().all(|c| c));
    }
}
