//! Centrality measures, fractional ranking, and the average-rank score.
//!
//! Degree and clique centrality read raw structure; closeness and
//! betweenness use hop-count shortest paths; Katz iterates attenuated walk
//! counts. Scores convert to fractional ranks (ties share the mean of the
//! positions they span) and ranks average into the key-figure measure.

use std::collections::VecDeque;

use crate::cliques;
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::parallel::map_chunks;

/// Whether a larger or smaller score marks the more central node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    HigherIsCentral,
    LowerIsCentral,
}

/// Per-node scores for one measure.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub measure: String,
    pub direction: Direction,
    pub scores: Vec<f64>,
}

/// Per-node fractional ranks, 1 = most central. Tied scores share the mean
/// of the rank positions they occupy, so ranks always sum to n(n+1)/2.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    pub measure: String,
    pub ranks: Vec<f64>,
}

/// Unweighted degree per node.
pub fn degree_centrality(g: &WeightedGraph) -> ScoreVector {
    ScoreVector {
        measure: "degree".to_string(),
        direction: Direction::HigherIsCentral,
        scores: (0..g.node_count()).map(|i| g.degree(i) as f64).collect(),
    }
}

/// Number of maximal cliques containing each node.
pub fn clique_centrality(g: &WeightedGraph) -> ScoreVector {
    let cs = cliques::bron_kerbosch(g, true);
    cliques::clique_membership_counts(&cs, g).expect("clique set was just computed from this graph")
}

/// Sum of hop-count distances to every reachable node; lower is more
/// central. Unreachable pairs contribute nothing (disconnected graphs sum
/// within each node's component).
pub fn closeness_centrality(g: &WeightedGraph) -> ScoreVector {
    let n = g.node_count();
    let per_chunk = map_chunks(n, |range| {
        range
            .map(|s| {
                let mut sum = 0u64;
                let mut dist = vec![u32::MAX; n];
                dist[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(u) = queue.pop_front() {
                    for &(v, _) in g.neighbors(u) {
                        if dist[v] == u32::MAX {
                            dist[v] = dist[u] + 1;
                            sum += u64::from(dist[v]);
                            queue.push_back(v);
                        }
                    }
                }
                sum as f64
            })
            .collect::<Vec<f64>>()
    });
    ScoreVector {
        measure: "closeness".to_string(),
        direction: Direction::LowerIsCentral,
        scores: per_chunk.into_iter().flatten().collect(),
    }
}

/// Brandes' betweenness over hop-count shortest paths: each node's share of
/// shortest paths between unordered pairs of other nodes.
pub fn betweenness_centrality(g: &WeightedGraph) -> ScoreVector {
    let n = g.node_count();
    let per_chunk = map_chunks(n, |range| {
        let mut partial = vec![0.0f64; n];
        for s in range {
            accumulate_from_source(g, s, &mut partial);
        }
        partial
    });
    // ordered reduction keeps the float sums reproducible
    let mut scores = vec![0.0f64; n];
    for partial in per_chunk {
        for (acc, v) in scores.iter_mut().zip(partial) {
            *acc += v;
        }
    }
    for v in &mut scores {
        *v /= 2.0; // undirected: each pair was visited from both endpoints
    }
    ScoreVector {
        measure: "betweenness".to_string(),
        direction: Direction::HigherIsCentral,
        scores,
    }
}

fn accumulate_from_source(g: &WeightedGraph, s: usize, acc: &mut [f64]) {
    let n = g.node_count();
    let mut order = Vec::with_capacity(n);
    let mut predecessors: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![i64::MAX; n];
    sigma[s] = 1.0;
    dist[s] = 0;

    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &(v, _) in g.neighbors(u) {
            if dist[v] == i64::MAX {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
            if dist[v] == dist[u] + 1 {
                sigma[v] += sigma[u];
                predecessors[v].push(u);
            }
        }
    }

    let mut delta = vec![0.0f64; n];
    while let Some(w) = order.pop() {
        for &u in &predecessors[w] {
            delta[u] += (sigma[u] / sigma[w]) * (1.0 + delta[w]);
        }
        if w != s {
            acc[w] += delta[w];
        }
    }
}

/// Katz centrality: the fixed point of `x = alpha * A * x + beta * 1` on the
/// unweighted adjacency, found by iteration.
///
/// Converges for alpha below the reciprocal spectral radius; divergence is
/// detected as failure to settle within `max_iter`.
pub fn katz_centrality(
    g: &WeightedGraph,
    alpha: f64,
    beta: f64,
    tol: f64,
    max_iter: usize,
) -> Result<ScoreVector> {
    let n = g.node_count();
    let mut x = vec![beta; n];
    let mut next = vec![0.0f64; n];
    for _ in 0..max_iter {
        for (i, slot) in next.iter_mut().enumerate() {
            let walk_sum: f64 = g.neighbors(i).iter().map(|&(j, _)| x[j]).sum();
            *slot = alpha * walk_sum + beta;
        }
        let mut change = 0.0f64;
        for i in 0..n {
            change = change.max((next[i] - x[i]).abs());
        }
        if !change.is_finite() {
            return Err(Error::NonConvergence(max_iter));
        }
        std::mem::swap(&mut x, &mut next);
        if change < tol {
            return Ok(ScoreVector {
                measure: "katz".to_string(),
                direction: Direction::HigherIsCentral,
                scores: x,
            });
        }
    }
    Err(Error::NonConvergence(max_iter))
}

/// Fractional ranking of a score vector in its central-first direction.
pub fn rank_scores(s: &ScoreVector) -> Ranking {
    let n = s.scores.len();
    let mut order: Vec<usize> = (0..n).collect();
    match s.direction {
        Direction::HigherIsCentral => {
            order.sort_by(|&a, &b| s.scores[b].total_cmp(&s.scores[a]).then(a.cmp(&b)))
        }
        Direction::LowerIsCentral => {
            order.sort_by(|&a, &b| s.scores[a].total_cmp(&s.scores[b]).then(a.cmp(&b)))
        }
    }

    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && s.scores[order[end]] == s.scores[order[start]] {
            end += 1;
        }
        // positions start+1 ..= end share their mean rank
        let mean = (start + 1 + end) as f64 / 2.0;
        for &node in &order[start..end] {
            ranks[node] = mean;
        }
        start = end;
    }
    Ranking {
        measure: s.measure.clone(),
        ranks,
    }
}

/// Mean of each node's ranks across measures; lower marks a key figure.
pub fn average_rank(rankings: &[Ranking]) -> Result<ScoreVector> {
    let Some(first) = rankings.first() else {
        return Err(Error::EmptyRankings);
    };
    let n = first.ranks.len();
    if rankings.iter().any(|r| r.ranks.len() != n) {
        return Err(Error::NodeSetMismatch);
    }
    let count = rankings.len() as f64;
    let scores = (0..n)
        .map(|i| rankings.iter().map(|r| r.ranks[i]).sum::<f64>() / count)
        .collect();
    Ok(ScoreVector {
        measure: "average-rank".to_string(),
        direction: Direction::LowerIsCentral,
        scores,
    })
}

/// The k most central nodes as `(label, score)`, ties broken by ascending
/// label. Lists every node when k exceeds the node count.
pub fn top_k_report(g: &WeightedGraph, s: &ScoreVector, k: usize) -> Vec<(String, f64)> {
    let mut entries: Vec<(String, f64)> = g
        .labels()
        .iter()
        .cloned()
        .zip(s.scores.iter().copied())
        .collect();
    entries.sort_by(|a, b| {
        let score_order = match s.direction {
            Direction::HigherIsCentral => b.1.total_cmp(&a.1),
            Direction::LowerIsCentral => a.1.total_cmp(&b.1),
        };
        score_order.then_with(|| a.0.cmp(&b.0))
    });
    entries.truncate(k);
    entries
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing;

    #[test]
    fn degree_star() {
        let g = testing::star_graph(4);
        let s = degree_centrality(&g);
        assert_eq!(s.scores, vec![4.0, 1.0, 1.0, 1.0, 1.0]);
    }

    #[test]
    fn degree_edgeless_is_zero() {
        let g = WeightedGraph::new(vec!["a", "b"], vec![]).unwrap();
        assert_eq!(degree_centrality(&g).scores, vec![0.0, 0.0]);
    }

    #[test]
    fn clique_centrality_bowtie_and_complete() {
        let s = clique_centrality(&testing::bowtie());
        assert_eq!(s.scores, vec![2.0, 1.0, 1.0, 1.0, 1.0]);
        let s = clique_centrality(&testing::complete_graph(5));
        assert_eq!(s.scores, vec![1.0; 5]);
    }

    #[test]
    fn closeness_path_and_triangle() {
        let s = closeness_centrality(&testing::path_graph(3));
        assert_eq!(s.scores, vec![3.0, 2.0, 3.0]);
        assert_eq!(s.direction, Direction::LowerIsCentral);

        let s = closeness_centrality(&testing::complete_graph(3));
        assert_eq!(s.scores, vec![2.0; 3]);
    }

    #[test]
    fn closeness_single_node_and_disconnected() {
        let single = WeightedGraph::new(vec!["a"], vec![]).unwrap();
        assert_eq!(closeness_centrality(&single).scores, vec![0.0]);

        let two_parts = testing::disjoint_cliques(&[3, 2]);
        let s = closeness_centrality(&two_parts);
        assert_eq!(s.scores, vec![2.0, 2.0, 2.0, 1.0, 1.0]);
    }

    #[test]
    fn betweenness_known_shapes() {
        assert_eq!(
            betweenness_centrality(&testing::path_graph(3)).scores,
            vec![0.0, 1.0, 0.0]
        );
        assert_eq!(
            betweenness_centrality(&testing::complete_graph(4)).scores,
            vec![0.0; 4]
        );
        // star center carries every one of the C(4,2) leaf pairs
        assert_eq!(
            betweenness_centrality(&testing::star_graph(4)).scores,
            vec![6.0, 0.0, 0.0, 0.0, 0.0]
        );
    }

    #[test]
    fn betweenness_matches_enumeration_oracle() {
        for seed in 0..10 {
            let g = testing::random_graph(9, 0.35, 100 + seed);
            let fast = betweenness_centrality(&g);
            let slow = testing::brute_force_betweenness(&g);
            for (a, b) in fast.scores.iter().zip(&slow) {
                assert!((a - b).abs() < 1e-9, "seed {seed}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn katz_fixed_points() {
        let edgeless = WeightedGraph::new(vec!["a", "b", "c"], vec![]).unwrap();
        let s = katz_centrality(&edgeless, 0.5, 1.0, 1e-9, 100).unwrap();
        assert_eq!(s.scores, vec![1.0; 3]);

        // x = 0.5 x + 1 per endpoint -> 2
        let edge = WeightedGraph::from_labeled_edges(&[("a", "b", 1.0)]).unwrap();
        let s = katz_centrality(&edge, 0.5, 1.0, 1e-9, 200).unwrap();
        for v in s.scores {
            assert!((v - 2.0).abs() < 1e-8);
        }

        // triangle: x = 2 * 0.25 x + 1 -> 2
        let s = katz_centrality(&testing::complete_graph(3), 0.25, 1.0, 1e-9, 200).unwrap();
        for v in s.scores {
            assert!((v - 2.0).abs() < 1e-8);
        }
    }

    #[test]
    fn katz_diverges_for_large_alpha() {
        // K_3 spectral radius is 2; alpha 0.9 diverges
        let err = katz_centrality(&testing::complete_graph(3), 0.9, 1.0, 1e-9, 500).unwrap_err();
        assert!(matches!(err, Error::NonConvergence(500)));
    }

    fn scores(measure: &str, direction: Direction, values: &[f64]) -> ScoreVector {
        ScoreVector {
            measure: measure.to_string(),
            direction,
            scores: values.to_vec(),
        }
    }

    #[test]
    fn fractional_ranking_examples() {
        let r = rank_scores(&scores(
            "t",
            Direction::HigherIsCentral,
            &[10.0, 8.0, 8.0, 5.0],
        ));
        assert_eq!(r.ranks, vec![1.0, 2.5, 2.5, 4.0]);

        let r = rank_scores(&scores("t", Direction::HigherIsCentral, &[7.0, 7.0, 7.0]));
        assert_eq!(r.ranks, vec![2.0, 2.0, 2.0]);

        let r = rank_scores(&scores("t", Direction::LowerIsCentral, &[1.0, 2.0, 3.0]));
        assert_eq!(r.ranks, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn average_rank_table_consistency() {
        // degree rank 7, clique rank 1 -> 4; degree 6, clique 2 -> 4
        let degree = Ranking {
            measure: "degree".into(),
            ranks: vec![7.0, 6.0],
        };
        let clique = Ranking {
            measure: "clique".into(),
            ranks: vec![1.0, 2.0],
        };
        let avg = average_rank(&[degree, clique]).unwrap();
        assert_eq!(avg.scores, vec![4.0, 4.0]);
        assert_eq!(avg.direction, Direction::LowerIsCentral);
    }

    #[test]
    fn average_rank_single_is_verbatim() {
        let only = Ranking {
            measure: "degree".into(),
            ranks: vec![2.0, 1.0, 3.0],
        };
        let avg = average_rank(std::slice::from_ref(&only)).unwrap();
        assert_eq!(avg.scores, only.ranks);
    }

    #[test]
    fn average_rank_errors() {
        assert!(matches!(average_rank(&[]), Err(Error::EmptyRankings)));
        let a = Ranking {
            measure: "a".into(),
            ranks: vec![1.0, 2.0],
        };
        let b = Ranking {
            measure: "b".into(),
            ranks: vec![1.0],
        };
        assert!(matches!(average_rank(&[a, b]), Err(Error::NodeSetMismatch)));
    }

    #[test]
    fn top_k_ordering_and_ties() {
        let g = WeightedGraph::new(vec!["a", "b", "c"], vec![]).unwrap();
        let s = scores("t", Direction::HigherIsCentral, &[3.0, 1.0, 2.0]);
        assert_eq!(
            top_k_report(&g, &s, 2),
            vec![("a".to_string(), 3.0), ("c".to_string(), 2.0)]
        );
        assert_eq!(top_k_report(&g, &s, 10).len(), 3);

        let tie = scores("t", Direction::HigherIsCentral, &[2.0, 2.0, 0.0]);
        assert_eq!(top_k_report(&g, &tie, 1), vec![("a".to_string(), 2.0)]);
    }
}
