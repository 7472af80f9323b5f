//! Modularity and Louvain invariants on random graphs.

use cliquescope_core::community::{
    louvain, modularity, modularity_gain, CommunityWeights, LevelGraph, Partition,
};
use cliquescope_core::testing;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn all_in_one_community_scores_zero(n in 2usize..14, p in 0.2f64..0.9, seed in 0u64..1000) {
        let g = testing::random_weighted_graph(n, p, seed, true);
        prop_assume!(g.total_weight() > 0.0);
        let one = Partition { assignment: vec![0; n], community_count: 1 };
        prop_assert!(modularity(&g, &one).unwrap().abs() < 1e-12);
    }

    #[test]
    fn incremental_gain_matches_full_recomputation(
        n in 3usize..12,
        p in 0.2f64..0.8,
        seed in 0u64..1000,
        move_seed in 0u64..1000,
    ) {
        let g = testing::random_weighted_graph(n, p, seed, true);
        prop_assume!(g.total_weight() > 0.0);
        let lg = LevelGraph::from_graph(&g);
        let mut rng = testing::TestRng::new(move_seed);
        let raw: Vec<usize> = (0..n).map(|_| rng.gen_range(3)).collect();
        let partition = Partition::from_assignment(&raw);
        let weights = CommunityWeights::new(&lg, &partition);
        for _ in 0..10 {
            let node = rng.gen_range(n);
            let target = rng.gen_range(partition.community_count);
            let gain = modularity_gain(&lg, &weights, node, target);
            let before = lg.modularity(&partition.assignment);
            let mut moved = partition.assignment.clone();
            moved[node] = target;
            let after = lg.modularity(&moved);
            prop_assert!((gain - (after - before)).abs() < 1e-12);
        }
    }

    #[test]
    fn louvain_never_loses_to_trivial_partitions(n in 3usize..14, p in 0.15f64..0.7, seed in 0u64..1000) {
        let g = testing::random_graph(n, p, seed);
        prop_assume!(g.total_weight() > 0.0);
        let result = louvain(&g, 1e-7, 50).unwrap();
        let singles = modularity(&g, &Partition::singletons(n)).unwrap();
        let all_one = modularity(&g, &Partition { assignment: vec![0; n], community_count: 1 }).unwrap();
        prop_assert!(result.modularity >= singles - 1e-12);
        prop_assert!(result.modularity >= all_one - 1e-12);
        for pair in result.trajectory().windows(2) {
            prop_assert!(pair[1] >= pair[0] - 1e-12);
        }
    }

    #[test]
    fn louvain_matches_exhaustive_optimum_on_planted_cliques(
        sizes in prop::sample::select(vec![vec![3usize, 3], vec![4, 4], vec![3, 4], vec![4, 3, 3]]),
    ) {
        let g = testing::disjoint_cliques(&sizes);
        let result = louvain(&g, 1e-7, 50).unwrap();
        let (best_q, best) = testing::best_partition_exhaustive(&g);
        prop_assert!((result.modularity - best_q).abs() < 1e-9);
        prop_assert_eq!(
            testing::normalize_partition(&result.final_partition.assignment),
            testing::normalize_partition(&best)
        );
    }
}
