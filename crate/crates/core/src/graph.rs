//! Undirected weighted graph with compact internal ids and external labels.
//!
//! Internal node ids are assigned by first appearance in the input, so a
//! parsed graph is reproducible without sorting. All user-facing output is
//! keyed by label; internal ordering never leaks.

use std::collections::HashMap;

use crate::error::{Error, ParseIssue, Result};
use crate::fmt::format_score;
use crate::matrix::DenseMatrix;

/// Default cap for dense-matrix conversion (~3.2 GB of f64 at 20k nodes).
pub const DEFAULT_DENSE_LIMIT: usize = 20_000;

/// Immutable undirected weighted graph.
///
/// Invariants: adjacency is symmetric, sorted by neighbor id, holds no
/// self-loops or duplicate entries, and all weights are finite and >= 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adjacency: Vec<Vec<(usize, f64)>>,
    total_weight: f64,
    edge_count: usize,
}

impl WeightedGraph {
    /// Builds a graph from explicit labels and (id, id, weight) edges.
    ///
    /// Duplicate edges with identical weight are deduplicated; conflicting
    /// weights, self-loops, and negative weights are rejected.
    pub fn new<S: Into<String>>(labels: Vec<S>, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::InvalidGraph("empty node label".into()));
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate label {label:?}")));
            }
        }

        let mut seen: HashMap<(usize, usize), f64> = HashMap::new();
        let mut unique = Vec::with_capacity(edges.len());
        for (a, b, w) in edges {
            if a >= n {
                return Err(Error::InvalidNode(a));
            }
            if b >= n {
                return Err(Error::InvalidNode(b));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!(
                    "self-loop on node {:?}",
                    labels[a]
                )));
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidGraph(format!("invalid weight {w}")));
            }
            let key = (a.min(b), a.max(b));
            match seen.get(&key) {
                Some(&prev) if prev == w => continue,
                Some(&prev) => {
                    return Err(Error::InvalidGraph(format!(
                        "edge {:?}-{:?} given conflicting weights {prev} and {w}",
                        labels[key.0], labels[key.1]
                    )))
                }
                None => {
                    seen.insert(key, w);
                    unique.push((key.0, key.1, w));
                }
            }
        }

        let mut adjacency = vec![Vec::new(); n];
        let mut total_weight = 0.0;
        for &(a, b, w) in &unique {
            adjacency[a].push((b, w));
            adjacency[b].push((a, w));
            total_weight += w;
        }
        for list in &mut adjacency {
            list.sort_unstable_by_key(|&(j, _)| j);
        }

        Ok(WeightedGraph {
            labels,
            index,
            adjacency,
            total_weight,
            edge_count: unique.len(),
        })
    }

    /// Convenience constructor: labels taken in first-appearance order.
    pub fn from_labeled_edges(edges: &[(&str, &str, f64)]) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut id_edges = Vec::with_capacity(edges.len());
        for &(a, b, w) in edges {
            let ia = *index.entry(a).or_insert_with(|| {
                labels.push(a.to_string());
                labels.len() - 1
            });
            let ib = *index.entry(b).or_insert_with(|| {
                labels.push(b.to_string());
                labels.len() - 1
            });
            id_edges.push((ia, ib, w));
        }
        WeightedGraph::new(labels, id_edges)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// m in the modularity formula: the sum of each undirected edge's
    /// weight, counted once per edge.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, node: usize) -> &str {
        &self.labels[node]
    }

    pub fn node_id(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Sorted (neighbor, weight) list for one node.
    pub fn neighbors(&self, node: usize) -> &[(usize, f64)] {
        &self.adjacency[node]
    }

    /// Unweighted degree: the neighbor count.
    pub fn degree(&self, node: usize) -> usize {
        self.adjacency[node].len()
    }

    /// Sum of incident edge weights (k_i in the modularity formula).
    pub fn weighted_degree(&self, node: usize) -> Result<f64> {
        if node >= self.node_count() {
            return Err(Error::InvalidNode(node));
        }
        Ok(self.adjacency[node].iter().map(|&(_, w)| w).sum())
    }

    pub fn edge_weight(&self, a: usize, b: usize) -> Option<f64> {
        self.adjacency
            .get(a)?
            .binary_search_by_key(&b, |&(j, _)| j)
            .ok()
            .map(|pos| self.adjacency[a][pos].1)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_weight(a, b).is_some()
    }

    /// Each undirected edge once, with a < b.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(a, list)| {
            list.iter()
                .filter(move |&&(b, _)| b > a)
                .map(move |&(b, w)| (a, b, w))
        })
    }

    /// Copy of the graph with weight-zero edges removed; node set unchanged.
    pub fn drop_zero_edges(&self) -> WeightedGraph {
        let edges = self.edges().filter(|&(_, _, w)| w > 0.0).collect();
        WeightedGraph::new(self.labels.clone(), edges)
            .expect("edges of a valid graph stay valid after filtering")
    }

    /// Dense adjacency form, zero diagonal, symmetric.
    pub fn to_dense_adjacency(&self) -> Result<DenseMatrix> {
        self.to_dense_adjacency_bounded(DEFAULT_DENSE_LIMIT)
    }

    pub fn to_dense_adjacency_bounded(&self, limit: usize) -> Result<DenseMatrix> {
        let n = self.node_count();
        if n > limit {
            return Err(Error::DenseLimit { nodes: n, limit });
        }
        let mut m = DenseMatrix::zeros(n);
        for (a, b, w) in self.edges() {
            m.set(a, b, w);
            m.set(b, a, w);
        }
        Ok(m)
    }

    /// Connected-component id per node, in BFS discovery order.
    pub fn connected_components(&self) -> Vec<usize> {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &(v, _) in &self.adjacency[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    /// Size of each node's connected component.
    pub fn component_sizes(&self) -> Vec<usize> {
        let comp = self.connected_components();
        let count = comp.iter().copied().max().map_or(0, |c| c + 1);
        let mut sizes = vec![0usize; count];
        for &c in &comp {
            sizes[c] += 1;
        }
        comp.into_iter().map(|c| sizes[c]).collect()
    }

    /// One-line structural summary: `nodes=<n> edges=<e> total_weight=<w>`.
    pub fn summary(&self) -> String {
        format!(
            "nodes={} edges={} total_weight={}",
            self.node_count(),
            self.edge_count,
            format_score(self.total_weight)
        )
    }
}

/// Parses the `[node, node, weight]` edge-list text format.
///
/// One edge per non-empty line: `<labelA><delim><labelB><delim><weight>`,
/// whitespace around fields trimmed, missing weight defaulting to 1.0.
/// `(A,B,w)` and `(B,A,w)` describe the same undirected edge; repeats must
/// agree on the weight. Self-loops and negative weights are rejected with
/// the offending line number.
pub fn parse_edge_list(text: &str, delimiter: char) -> Result<WeightedGraph> {
    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen: HashMap<(usize, usize), f64> = HashMap::new();
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();

    let intern = |label: &str, labels: &mut Vec<String>, index: &mut HashMap<String, usize>| {
        if let Some(&id) = index.get(label) {
            return id;
        }
        labels.push(label.to_string());
        index.insert(label.to_string(), labels.len() - 1);
        labels.len() - 1
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split(delimiter).map(str::trim).collect();
        if fields.len() < 2 || fields.len() > 3 {
            return Err(Error::Parse {
                line,
                issue: ParseIssue::Malformed(format!(
                    "expected 2 or 3 fields, found {}",
                    fields.len()
                )),
            });
        }
        let (a, b) = (fields[0], fields[1]);
        if a.is_empty() || b.is_empty() {
            return Err(Error::Parse {
                line,
                issue: ParseIssue::Malformed("empty node label".into()),
            });
        }
        let weight = match fields.get(2) {
            None => 1.0,
            Some(field) => match field.parse::<f64>() {
                Ok(w) if w.is_finite() => w,
                _ => {
                    return Err(Error::Parse {
                        line,
                        issue: ParseIssue::BadWeight((*field).to_string()),
                    })
                }
            },
        };
        if weight < 0.0 {
            return Err(Error::Parse {
                line,
                issue: ParseIssue::NegativeWeight,
            });
        }
        if a == b {
            return Err(Error::Parse {
                line,
                issue: ParseIssue::SelfLoop,
            });
        }
        let ia = intern(a, &mut labels, &mut index);
        let ib = intern(b, &mut labels, &mut index);
        let key = (ia.min(ib), ia.max(ib));
        match seen.get(&key) {
            Some(&prev) if prev == weight => {} // symmetric repeat, accepted
            Some(&prev) => {
                return Err(Error::Parse {
                    line,
                    issue: ParseIssue::ConflictingDuplicate {
                        previous: prev,
                        new: weight,
                    },
                })
            }
            None => {
                seen.insert(key, weight);
                edges.push((key.0, key.1, weight));
            }
        }
    }

    WeightedGraph::new(labels, edges)
}
