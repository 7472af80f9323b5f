//! Modularity scoring and Louvain community detection.
//!
//! Modularity follows the double-sum form over all ordered node pairs,
//! self-pairs included: Q = (1/2m) Σ_ij [A_ij - k_i k_j / 2m] δ(C_i, C_j).
//! Louvain alternates deterministic local moving (ascending node order,
//! ties resolved toward the community holding the smallest node id) with
//! aggregation of communities into super-nodes.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Node-to-community assignment with dense community ids 0..count-1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub assignment: Vec<usize>,
    pub community_count: usize,
}

impl Partition {
    /// Renumbers arbitrary community ids densely, in first-seen order by
    /// ascending node id.
    pub fn from_assignment(raw: &[usize]) -> Self {
        let mut map: BTreeMap<usize, usize> = BTreeMap::new();
        let mut next = 0;
        let assignment = raw
            .iter()
            .map(|&c| {
                *map.entry(c).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    id
                })
            })
            .collect();
        Partition {
            assignment,
            community_count: next,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            assignment: (0..n).collect(),
            community_count: n,
        }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

/// Working graph form carried across Louvain levels: plain adjacency plus
/// per-node self-loop weight. This is the one place self-loops exist; they
/// arise from collapsing a community's internal weight (w becomes A_ii = 2w)
/// so that weighted degrees and 2m are conserved.
#[derive(Debug, Clone)]
pub struct LevelGraph {
    adjacency: Vec<Vec<(usize, f64)>>,
    self_loop: Vec<f64>,
    degree: Vec<f64>,
    two_m: f64,
}

impl LevelGraph {
    pub fn from_graph(g: &WeightedGraph) -> Self {
        let n = g.node_count();
        let adjacency: Vec<Vec<(usize, f64)>> = (0..n).map(|i| g.neighbors(i).to_vec()).collect();
        let degree: Vec<f64> = adjacency
            .iter()
            .map(|list| list.iter().map(|&(_, w)| w).sum())
            .collect();
        LevelGraph {
            adjacency,
            self_loop: vec![0.0; n],
            degree,
            two_m: 2.0 * g.total_weight(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn two_m(&self) -> f64 {
        self.two_m
    }

    /// Q for an assignment over this graph's nodes, self-loops contributing
    /// their full A_ii weight.
    pub fn modularity(&self, assignment: &[usize]) -> f64 {
        assert_eq!(assignment.len(), self.node_count());
        assert!(self.two_m > 0.0, "modularity undefined at zero weight");
        let count = assignment.iter().copied().max().map_or(0, |c| c + 1);
        let mut internal = vec![0.0; count]; // ordered-pair sums per community
        let mut sigma = vec![0.0; count]; // degree sums per community
        for (i, list) in self.adjacency.iter().enumerate() {
            let c = assignment[i];
            internal[c] += self.self_loop[i];
            for &(j, w) in list {
                if assignment[j] == c {
                    internal[c] += w;
                }
            }
            sigma[c] += self.degree[i];
        }
        let mut q = 0.0;
        for c in 0..count {
            q += internal[c] / self.two_m - (sigma[c] / self.two_m).powi(2);
        }
        q
    }

    /// Collapses each community to a super-node. Inter-community weights
    /// sum; internal weight w becomes self-loop weight 2w (plus inherited
    /// self-loops), leaving 2m unchanged.
    pub fn aggregate(&self, assignment: &[usize], count: usize) -> LevelGraph {
        let mut self_loop = vec![0.0; count];
        let mut cross: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (i, list) in self.adjacency.iter().enumerate() {
            let ci = assignment[i];
            self_loop[ci] += self.self_loop[i];
            for &(j, w) in list {
                if j <= i {
                    continue;
                }
                let cj = assignment[j];
                if ci == cj {
                    self_loop[ci] += 2.0 * w;
                } else {
                    *cross.entry((ci.min(cj), ci.max(cj))).or_insert(0.0) += w;
                }
            }
        }
        let mut adjacency = vec![Vec::new(); count];
        for (&(a, b), &w) in &cross {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
        }
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(j, _)| j);
        }
        let degree: Vec<f64> = (0..count)
            .map(|c| adjacency[c].iter().map(|&(_, w)| w).sum::<f64>() + self_loop[c])
            .collect();
        LevelGraph {
            adjacency,
            self_loop,
            degree,
            two_m: self.two_m,
        }
    }
}

/// Gain from adding a detached node (degree k_i, weight k_in toward the
/// community) to a community with degree sum sigma.
fn insert_gain(k_in: f64, sigma: f64, k_i: f64, two_m: f64) -> f64 {
    2.0 * (k_in - sigma * k_i / two_m) / two_m
}

/// Modularity of a partition, per the double-sum over ordered pairs.
///
/// Errors on zero total weight and on assignments that do not cover the
/// node set.
pub fn modularity(g: &WeightedGraph, p: &Partition) -> Result<f64> {
    if g.total_weight() <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    if p.assignment.len() != g.node_count() {
        return Err(Error::NodeSetMismatch);
    }
    Ok(LevelGraph::from_graph(g).modularity(&p.assignment))
}

/// Cached per-community degree sums backing incremental gain evaluation.
#[derive(Debug, Clone)]
pub struct CommunityWeights {
    assignment: Vec<usize>,
    sigma_tot: Vec<f64>,
}

impl CommunityWeights {
    pub fn new(graph: &LevelGraph, p: &Partition) -> Self {
        assert_eq!(p.assignment.len(), graph.node_count());
        let mut sigma_tot = vec![0.0; p.community_count];
        for (i, &c) in p.assignment.iter().enumerate() {
            sigma_tot[c] += graph.degree[i];
        }
        CommunityWeights {
            assignment: p.assignment.clone(),
            sigma_tot,
        }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Re-homes a node and updates the cached sums.
    pub fn apply_move(&mut self, graph: &LevelGraph, node: usize, target: usize) {
        let current = self.assignment[node];
        if current == target {
            return;
        }
        self.sigma_tot[current] -= graph.degree[node];
        self.sigma_tot[target] += graph.degree[node];
        self.assignment[node] = target;
    }

    #[cfg(debug_assertions)]
    fn verify(&self, graph: &LevelGraph) {
        let mut sigma = vec![0.0; self.sigma_tot.len()];
        for (i, &c) in self.assignment.iter().enumerate() {
            sigma[c] += graph.degree[i];
        }
        for (cached, fresh) in self.sigma_tot.iter().zip(&sigma) {
            assert!(
                (cached - fresh).abs() <= 1e-9 * (1.0 + fresh.abs()),
                "community weight cache out of sync with assignment"
            );
        }
    }
}

/// Incremental modularity change from moving `node` into `target`,
/// identical (within rounding) to re-evaluating Q before and after.
///
/// Panics when the cached sums are inconsistent with the assignment
/// (debug builds) or the node/community is out of range.
pub fn modularity_gain(
    graph: &LevelGraph,
    weights: &CommunityWeights,
    node: usize,
    target: usize,
) -> f64 {
    assert!(node < graph.node_count(), "node out of range");
    assert!(target < weights.sigma_tot.len(), "community out of range");
    #[cfg(debug_assertions)]
    weights.verify(graph);

    let current = weights.assignment[node];
    if current == target {
        return 0.0;
    }
    let k_i = graph.degree[node];
    let mut k_in_current = 0.0;
    let mut k_in_target = 0.0;
    for &(j, w) in &graph.adjacency[node] {
        let c = weights.assignment[j];
        if c == current {
            k_in_current += w;
        } else if c == target {
            k_in_target += w;
        }
    }
    let leave = insert_gain(
        k_in_current,
        weights.sigma_tot[current] - k_i,
        k_i,
        graph.two_m,
    );
    let join = insert_gain(k_in_target, weights.sigma_tot[target], k_i, graph.two_m);
    join - leave
}

/// One Louvain level: the partition found on that level's (possibly
/// aggregated) nodes and its modularity.
#[derive(Debug, Clone)]
pub struct LouvainLevel {
    pub partition: Partition,
    pub modularity: f64,
}

/// Louvain output: the flattened partition on the original nodes plus the
/// per-level history. The modularity trajectory never decreases.
#[derive(Debug, Clone)]
pub struct LouvainResult {
    pub final_partition: Partition,
    pub levels: Vec<LouvainLevel>,
    pub modularity: f64,
}

impl LouvainResult {
    pub fn trajectory(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.modularity).collect()
    }
}

/// Louvain community detection.
///
/// Local moving sweeps nodes in ascending id order, repeatedly, until a
/// full sweep gains less than `min_gain`; communities then collapse into
/// super-nodes and the next level starts. Stops when a level merges
/// nothing or `max_levels` is reached. Deterministic for identical inputs.
pub fn louvain(g: &WeightedGraph, min_gain: f64, max_levels: usize) -> Result<LouvainResult> {
    if g.total_weight() <= 0.0 {
        return Err(Error::EmptyGraph);
    }
    let mut level_graph = LevelGraph::from_graph(g);
    let mut flat: Vec<usize> = (0..g.node_count()).collect();
    let mut levels: Vec<LouvainLevel> = Vec::new();

    for _ in 0..max_levels.max(1) {
        let assignment = local_moving(&level_graph, min_gain);
        let partition = Partition::from_assignment(&assignment);
        let q = level_graph.modularity(&partition.assignment);
        for c in flat.iter_mut() {
            *c = partition.assignment[*c];
        }
        let merged = partition.community_count < level_graph.node_count();
        let next = level_graph.aggregate(&partition.assignment, partition.community_count);
        levels.push(LouvainLevel {
            partition,
            modularity: q,
        });
        if !merged {
            break;
        }
        level_graph = next;
    }

    let final_partition = Partition::from_assignment(&flat);
    let modularity = levels.last().map(|l| l.modularity).unwrap_or(0.0);
    Ok(LouvainResult {
        final_partition,
        levels,
        modularity,
    })
}

/// One level of local moving; returns a dense assignment.
fn local_moving(graph: &LevelGraph, min_gain: f64) -> Vec<usize> {
    let n = graph.node_count();
    let mut assignment: Vec<usize> = (0..n).collect();
    let mut sigma_tot: Vec<f64> = graph.degree.clone();
    let mut members: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i])).collect();

    loop {
        let mut sweep_gain = 0.0;
        let mut moves = 0usize;
        for i in 0..n {
            let current = assignment[i];
            let mut k_in: BTreeMap<usize, f64> = BTreeMap::new();
            for &(j, w) in &graph.adjacency[i] {
                *k_in.entry(assignment[j]).or_insert(0.0) += w;
            }
            let k_i = graph.degree[i];
            let stay = insert_gain(
                k_in.get(&current).copied().unwrap_or(0.0),
                sigma_tot[current] - k_i,
                k_i,
                graph.two_m,
            );
            let mut best_gain = 0.0;
            let mut best_community = current;
            let mut best_min_member = usize::MAX;
            for (&c, &kin) in &k_in {
                if c == current {
                    continue;
                }
                let gain = insert_gain(kin, sigma_tot[c], k_i, graph.two_m) - stay;
                if gain <= 0.0 {
                    continue;
                }
                let min_member = *members[c].first().expect("candidate community non-empty");
                if gain > best_gain || (gain == best_gain && min_member < best_min_member) {
                    best_gain = gain;
                    best_community = c;
                    best_min_member = min_member;
                }
            }
            if best_community != current {
                members[current].remove(&i);
                members[best_community].insert(i);
                sigma_tot[current] -= k_i;
                sigma_tot[best_community] += k_i;
                assignment[i] = best_community;
                sweep_gain += best_gain;
                moves += 1;
            }
        }
        if moves == 0 || sweep_gain < min_gain {
            break;
        }
    }
    assignment
}
