//! Maximal clique enumeration (Bron-Kerbosch) and per-node membership counts.

use std::hash::{Hash, Hasher};

use crate::centrality::{Direction, ScoreVector};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A complete subgraph, members sorted ascending by internal id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clique {
    pub members: Vec<usize>,
}

/// Every maximal clique of one graph, in canonical order: each clique's
/// members ascending, cliques sorted lexicographically.
#[derive(Debug, Clone)]
pub struct CliqueSet {
    cliques: Vec<Clique>,
    fingerprint: u64,
}

impl CliqueSet {
    pub fn cliques(&self) -> &[Clique] {
        &self.cliques
    }

    pub fn len(&self) -> usize {
        self.cliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cliques.is_empty()
    }

    /// Text form: one clique per line, member labels space-separated,
    /// canonical order.
    pub fn to_text(&self, g: &WeightedGraph) -> String {
        let mut out = String::new();
        for clique in &self.cliques {
            let labels: Vec<&str> = clique.members.iter().map(|&i| g.label(i)).collect();
            out.push_str(&labels.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Structural fingerprint over the node count and positive-weight edge set;
/// ties a CliqueSet to the graph it was computed from.
fn structure_fingerprint(g: &WeightedGraph) -> u64 {
    let mut hasher = std::collections::hash_map::DefaultHasher::new();
    g.node_count().hash(&mut hasher);
    for (a, b, w) in g.edges() {
        if w > 0.0 {
            (a, b).hash(&mut hasher);
        }
    }
    hasher.finish()
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn intersect_len(a: &[usize], b: &[usize]) -> usize {
    let mut count = 0;
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

fn difference_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut j = 0;
    for &v in a {
        while j < b.len() && b[j] < v {
            j += 1;
        }
        if j < b.len() && b[j] == v {
            continue;
        }
        out.push(v);
    }
    out
}

fn remove_sorted(v: &mut Vec<usize>, value: usize) {
    if let Ok(pos) = v.binary_search(&value) {
        v.remove(pos);
    }
}

fn insert_sorted(v: &mut Vec<usize>, value: usize) {
    if let Err(pos) = v.binary_search(&value) {
        v.insert(pos, value);
    }
}

struct Frame {
    p: Vec<usize>,
    x: Vec<usize>,
    todo: Vec<usize>,
    next: usize,
}

fn make_frame(
    p: Vec<usize>,
    x: Vec<usize>,
    neighbors: &[Vec<usize>],
    pivoting: bool,
    r: &[usize],
    out: &mut Vec<Clique>,
) -> Frame {
    if p.is_empty() && x.is_empty() {
        // both candidate and excluded sets exhausted: R is maximal
        let mut members = r.to_vec();
        members.sort_unstable();
        out.push(Clique { members });
        return Frame {
            p,
            x,
            todo: Vec::new(),
            next: 0,
        };
    }
    let todo = if p.is_empty() {
        Vec::new()
    } else if pivoting {
        // pivot: the vertex of P ∪ X with most neighbors in P, smallest id on ties
        let mut pivot = usize::MAX;
        let mut best = usize::MAX;
        let mut consider = |u: usize| {
            let count = intersect_len(&neighbors[u], &p);
            if best == usize::MAX || count > best {
                best = count;
                pivot = u;
            }
        };
        let mut i = 0;
        let mut j = 0;
        while i < p.len() || j < x.len() {
            if j >= x.len() || (i < p.len() && p[i] < x[j]) {
                consider(p[i]);
                i += 1;
            } else {
                consider(x[j]);
                j += 1;
            }
        }
        difference_sorted(&p, &neighbors[pivot])
    } else {
        p.clone()
    };
    Frame {
        p,
        x,
        todo,
        next: 0,
    }
}

/// Enumerates every maximal clique exactly once.
///
/// The candidate set P starts as all nodes and the excluded set X empty; a
/// clique is reported whenever both empty out. Isolated nodes surface as
/// singleton cliques. Implemented with an explicit stack so deep graphs
/// (e.g. large complete graphs) cannot overflow the call stack.
pub fn bron_kerbosch(g: &WeightedGraph, pivoting: bool) -> CliqueSet {
    let n = g.node_count();
    let fingerprint = structure_fingerprint(g);
    let neighbors: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            g.neighbors(i)
                .iter()
                .filter(|&&(_, w)| w > 0.0)
                .map(|&(j, _)| j)
                .collect()
        })
        .collect();

    let mut cliques: Vec<Clique> = Vec::new();
    if n > 0 {
        let mut r: Vec<usize> = Vec::new();
        let mut stack = vec![make_frame(
            (0..n).collect(),
            Vec::new(),
            &neighbors,
            pivoting,
            &r,
            &mut cliques,
        )];
        while let Some(top) = stack.last_mut() {
            if top.next < top.todo.len() {
                let v = top.todo[top.next];
                top.next += 1;
                let child_p = intersect_sorted(&top.p, &neighbors[v]);
                let child_x = intersect_sorted(&top.x, &neighbors[v]);
                remove_sorted(&mut top.p, v);
                insert_sorted(&mut top.x, v);
                r.push(v);
                let frame = make_frame(child_p, child_x, &neighbors, pivoting, &r, &mut cliques);
                stack.push(frame);
            } else {
                stack.pop();
                if !stack.is_empty() {
                    r.pop();
                }
            }
        }
    }

    cliques.sort_unstable_by(|a, b| a.members.cmp(&b.members));
    CliqueSet {
        cliques,
        fingerprint,
    }
}

/// Per-node count of maximal cliques containing the node.
///
/// Errors when the clique set was not produced from `g`.
pub fn clique_membership_counts(cs: &CliqueSet, g: &WeightedGraph) -> Result<ScoreVector> {
    if cs.fingerprint != structure_fingerprint(g) {
        return Err(Error::FingerprintMismatch);
    }
    let mut counts = vec![0.0; g.node_count()];
    for clique in &cs.cliques {
        for &node in &clique.members {
            counts[node] += 1.0;
        }
    }
    Ok(ScoreVector {
        measure: "clique".to_string(),
        direction: Direction::HigherIsCentral,
        scores: counts,
    })
}
